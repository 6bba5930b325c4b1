#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "wb/power_model.hpp"

namespace wb {

enum class InstrKind { ALU, LOAD, STORE, BRANCH };

InstrKind instr_kind_from_string(const std::string& name);
std::string instr_kind_name(InstrKind k);

struct InstructionRecord {
    std::uint64_t pc = 0;
    InstrKind kind = InstrKind::ALU;
    bool branch_taken = false;  // BRANCH only
    std::uint64_t target = 0;   // BRANCH only
};

// Penalty-accounting timing model of the canonical ten-stage pipeline:
// one cycle per instruction plus the fill of the nine downstream stages,
// plus fixed penalties per misprediction / forced refetch. Out-of-order
// structure collapses into those penalties.
struct PipelineConfig {
    static constexpr int kStages = 10;
    static const std::array<const char*, kStages> stage_names;

    int fetch_width = 1;
    int mispredict_penalty = 9; // pipeline depth - 1 (flush cost)
    int refetch_penalty = 3;
    int bht_entries = 2;        // power of two
    int buffer_capacity = 16;   // reserved sizing knob; timing model does not consume it
};

void validate(const PipelineConfig& cfg);

// Branch history table of 2-bit saturating counters, indexed by
// pc mod entries; predicts taken when the counter is 2 or 3.
struct BranchPredictor {
    std::vector<std::uint8_t> table;

    explicit BranchPredictor(int entries);
    bool predict(std::uint64_t pc) const;
    void update(std::uint64_t pc, bool taken);
    void flip_all(); // invert both bits of every counter
};

enum class TrojanKind { BranchFlip, BufferStall };
enum class TriggerKind { ClockCounter, Condition };

TrojanKind trojan_kind_from_string(const std::string& name);
std::string trojan_kind_name(TrojanKind k);

// BranchFlip: on activation, invert all predictor counters, corrupting
// later predictions only. BufferStall: on activation, force one refetch
// costing refetch_penalty cycles. ClockCounter fires once per `period`
// elapsed cycles; Condition fires once, when the retired-instruction
// count reaches `condition_threshold`.
struct TrojanSpec {
    TrojanKind kind = TrojanKind::BranchFlip;
    TriggerKind trigger = TriggerKind::ClockCounter;
    std::uint64_t period = 1000;
    std::uint64_t condition_threshold = 0;
};

void validate(const TrojanSpec& spec);

struct PipelineStats {
    std::uint64_t cycles = 0;
    std::uint64_t retired = 0;
    std::uint64_t mispredictions = 0;
    std::uint64_t refetches = 0;
    std::uint64_t trojan_activations = 0;
    std::vector<std::uint64_t> retired_pcs; // retirement order, for transparency checks

    double ipc() const { return cycles ? double(retired) / double(cycles) : 0.0; }
};

// Deterministic: a pure function of (trace, cfg, trojan). Architectural
// results never change; Trojans only add cycles. Throws ConfigError on
// an empty trace.
PipelineStats run(const std::vector<InstructionRecord>& trace, const PipelineConfig& cfg,
                  const std::optional<TrojanSpec>& trojan);

// 100 * (healthy.ipc - infected.ipc) / healthy.ipc. Throws ConfigError
// when retired counts differ (runs are not comparable).
double ipc_degradation(const PipelineStats& healthy, const PipelineStats& infected);

// 100 * (infected - healthy) / healthy for area and average power.
// Throws DataError on a zero healthy estimate.
std::pair<double, double> footprint_delta(const ModuleInventory& healthy_inv,
                                          const ModuleInventory& infected_inv,
                                          const TechLibrary& lib, Tech tech);

// Seeded synthetic instruction stream: a loop body of `n_sites` branch
// sites (plus filler ALU/LOAD/STORE work) with per-site taken bias.
// Replaces recorded benchmark traces at desk scale.
struct TraceGenParams {
    std::uint64_t n_instructions = 20000;
    double branch_fraction = 0.5; // fraction of instructions that branch
    double taken_bias = 0.9;      // probability a branch is taken
    int n_sites = 8;              // distinct branch pcs (BHT aliasing pressure)
    std::uint64_t seed = 0;
};

std::vector<InstructionRecord> synth_instruction_trace(const TraceGenParams& params);

// Trace file CSV: "pc,kind,taken,target" with hex pc/target; taken and
// target are empty for non-branches. Malformed rows throw DataError.
std::string instruction_trace_csv(const std::vector<InstructionRecord>& trace,
                                  const std::string& stamp);
std::vector<InstructionRecord> parse_instruction_trace(const std::string& path);

} // namespace wb
