#include "wb/pipeline.hpp"

#include <cstdlib>

#include "wb/csvio.hpp"
#include "wb/errors.hpp"
#include "wb/kvfile.hpp"
#include "wb/rng.hpp"

namespace wb {

const std::array<const char*, PipelineConfig::kStages> PipelineConfig::stage_names = {
    "Fetch",   "Decode",          "Rename",    "Dispatch", "Issue",
    "Reg Read", "Execute", "Load/Store Unit", "Writeback", "Retire"};

InstrKind instr_kind_from_string(const std::string& name) {
    if (name == "alu") return InstrKind::ALU;
    if (name == "load") return InstrKind::LOAD;
    if (name == "store") return InstrKind::STORE;
    if (name == "branch") return InstrKind::BRANCH;
    throw DataError("unknown instruction kind '" + name + "'");
}

std::string instr_kind_name(InstrKind k) {
    switch (k) {
        case InstrKind::ALU: return "alu";
        case InstrKind::LOAD: return "load";
        case InstrKind::STORE: return "store";
        case InstrKind::BRANCH: return "branch";
    }
    return "alu";
}

TrojanKind trojan_kind_from_string(const std::string& name) {
    if (name == "branchflip") return TrojanKind::BranchFlip;
    if (name == "bufferstall") return TrojanKind::BufferStall;
    throw ConfigError("unknown trojan kind '" + name + "' (expected branchflip or bufferstall)");
}

std::string trojan_kind_name(TrojanKind k) {
    return k == TrojanKind::BranchFlip ? "branchflip" : "bufferstall";
}

void validate(const PipelineConfig& cfg) {
    if (cfg.fetch_width < 1) throw ConfigError("pipeline config: fetch_width must be >= 1");
    if (cfg.mispredict_penalty < 1 || cfg.refetch_penalty < 1)
        throw ConfigError("pipeline config: penalties must be >= 1");
    if (cfg.bht_entries < 1 || (cfg.bht_entries & (cfg.bht_entries - 1)) != 0)
        throw ConfigError("pipeline config: bht_entries must be a power of two");
    if (cfg.buffer_capacity < 1) throw ConfigError("pipeline config: buffer_capacity must be >= 1");
}

void validate(const TrojanSpec& spec) {
    if (spec.trigger == TriggerKind::ClockCounter && spec.period < 1)
        throw ConfigError("trojan spec: period must be >= 1");
}

BranchPredictor::BranchPredictor(int entries) {
    if (entries < 1 || (entries & (entries - 1)) != 0)
        throw ConfigError("branch predictor: entry count must be a power of two");
    table.assign(std::size_t(entries), 0);
}

bool BranchPredictor::predict(std::uint64_t pc) const {
    return table[pc & (table.size() - 1)] >= 2;
}

void BranchPredictor::update(std::uint64_t pc, bool taken) {
    std::uint8_t& c = table[pc & (table.size() - 1)];
    if (taken) {
        if (c < 3) ++c;
    } else {
        if (c > 0) --c;
    }
}

void BranchPredictor::flip_all() {
    for (auto& c : table) c ^= 0x3;
}

PipelineStats run(const std::vector<InstructionRecord>& trace, const PipelineConfig& cfg,
                  const std::optional<TrojanSpec>& trojan) {
    if (trace.empty()) throw ConfigError("pipeline run: empty instruction trace");
    validate(cfg);
    if (trojan) validate(*trojan);

    PipelineStats st;
    st.retired_pcs.reserve(trace.size());
    BranchPredictor bp(cfg.bht_entries);

    // Trigger bookkeeping. A clock trigger latches at most one activation
    // per instruction evaluation: crossing one or more period boundaries
    // since the last evaluation fires the payload once, and the schedule
    // resumes at the next boundary ahead of the current cycle count.
    std::uint64_t next_trigger = trojan ? trojan->period : 0;
    bool condition_fired = false;

    auto activate = [&]() {
        ++st.trojan_activations;
        if (trojan->kind == TrojanKind::BranchFlip) {
            bp.flip_all();
        } else {
            ++st.refetches;
            st.cycles += std::uint64_t(cfg.refetch_penalty);
        }
    };

    for (std::size_t i = 0; i < trace.size(); ++i) {
        if (trojan) {
            if (trojan->trigger == TriggerKind::ClockCounter) {
                if (st.cycles >= next_trigger) {
                    activate();
                    next_trigger = (st.cycles / trojan->period + 1) * trojan->period;
                }
            } else if (!condition_fired && st.retired >= trojan->condition_threshold) {
                condition_fired = true;
                activate();
            }
        }

        // One fetch group per cycle.
        if (i % std::size_t(cfg.fetch_width) == 0) ++st.cycles;

        const InstructionRecord& ins = trace[i];
        if (ins.kind == InstrKind::BRANCH) {
            const bool predicted = bp.predict(ins.pc);
            if (predicted != ins.branch_taken) {
                ++st.mispredictions;
                st.cycles += std::uint64_t(cfg.mispredict_penalty);
            }
            bp.update(ins.pc, ins.branch_taken);
        }

        ++st.retired;
        st.retired_pcs.push_back(ins.pc);
    }

    // Pipeline fill: the last instruction still traverses the nine
    // stages behind Fetch.
    st.cycles += std::uint64_t(PipelineConfig::kStages - 1);
    return st;
}

double ipc_degradation(const PipelineStats& healthy, const PipelineStats& infected) {
    if (healthy.retired != infected.retired)
        throw ConfigError("ipc_degradation: runs retired different instruction counts");
    return 100.0 * (healthy.ipc() - infected.ipc()) / healthy.ipc();
}

std::pair<double, double> footprint_delta(const ModuleInventory& healthy_inv,
                                          const ModuleInventory& infected_inv,
                                          const TechLibrary& lib, Tech tech) {
    const double ha = estimate_area(healthy_inv, lib, tech);
    const double hp = estimate_avg_power(healthy_inv, lib, tech);
    if (ha == 0.0 || hp == 0.0)
        throw DataError("footprint_delta: zero healthy estimate for '" + healthy_inv.name + "'");
    const double ia = estimate_area(infected_inv, lib, tech);
    const double ip = estimate_avg_power(infected_inv, lib, tech);
    return {100.0 * (ia - ha) / ha, 100.0 * (ip - hp) / hp};
}

std::vector<InstructionRecord> synth_instruction_trace(const TraceGenParams& params) {
    if (params.n_instructions == 0)
        throw ConfigError("trace generator: need at least one instruction");
    if (!(params.branch_fraction >= 0.0 && params.branch_fraction <= 1.0))
        throw ConfigError("trace generator: branch_fraction must be in [0, 1]");
    if (!(params.taken_bias >= 0.0 && params.taken_bias <= 1.0))
        throw ConfigError("trace generator: taken_bias must be in [0, 1]");
    if (params.n_sites < 1) throw ConfigError("trace generator: n_sites must be >= 1");

    std::vector<InstructionRecord> trace;
    trace.reserve(params.n_instructions);
    for (std::uint64_t i = 0; i < params.n_instructions; ++i) {
        InstructionRecord ins;
        if (uniform01(counter_hash(params.seed, i, 0)) < params.branch_fraction) {
            ins.kind = InstrKind::BRANCH;
            const int site =
                int(uniform01(counter_hash(params.seed, i, 1)) * double(params.n_sites));
            ins.pc = 0x1000 + 4 * std::uint64_t(site < params.n_sites ? site : params.n_sites - 1);
            ins.branch_taken = uniform01(counter_hash(params.seed, i, 2)) < params.taken_bias;
            ins.target = ins.pc - 16; // backward, loop-shaped
        } else {
            const double u = uniform01(counter_hash(params.seed, i, 3));
            ins.kind = u < 1.0 / 3.0 ? InstrKind::ALU
                                     : (u < 2.0 / 3.0 ? InstrKind::LOAD : InstrKind::STORE);
            ins.pc = 0x8000 + 4 * i;
        }
        trace.push_back(ins);
    }
    return trace;
}

std::string instruction_trace_csv(const std::vector<InstructionRecord>& trace,
                                  const std::string& stamp) {
    std::string out = stamp + "\n";
    out += "pc,kind,taken,target\n";
    char buf[32];
    for (const auto& ins : trace) {
        std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(ins.pc));
        out += buf;
        out += ',';
        out += instr_kind_name(ins.kind);
        if (ins.kind == InstrKind::BRANCH) {
            out += ins.branch_taken ? ",1," : ",0,";
            std::snprintf(buf, sizeof buf, "%llx", static_cast<unsigned long long>(ins.target));
            out += buf;
        } else {
            out += ",,";
        }
        out += '\n';
    }
    return out;
}

namespace {

std::uint64_t parse_hex_u64(const std::string& token, const std::string& context) {
    const std::string t = trim(token);
    if (!t.empty()) {
        const char* begin = t.c_str();
        char* end = nullptr;
        unsigned long long v = std::strtoull(begin, &end, 16);
        if (end == begin + t.size()) return v;
    }
    throw DataError(context + ": not a hex value: '" + token + "'");
}

} // namespace

std::vector<InstructionRecord> parse_instruction_trace(const std::string& path) {
    const auto rows = read_csv(path);
    if (rows.empty() || rows[0] != std::vector<std::string>{"pc", "kind", "taken", "target"})
        throw DataError(path + ": expected header pc,kind,taken,target");
    std::vector<InstructionRecord> trace;
    trace.reserve(rows.size() - 1);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 4) throw DataError(path + ": bad row " + std::to_string(i));
        InstructionRecord ins;
        ins.pc = parse_hex_u64(r[0], path);
        ins.kind = instr_kind_from_string(r[1]);
        if (ins.kind == InstrKind::BRANCH) {
            if (r[2] != "0" && r[2] != "1")
                throw DataError(path + ": branch needs taken flag 0/1, row " + std::to_string(i));
            ins.branch_taken = r[2] == "1";
            ins.target = parse_hex_u64(r[3], path);
        } else if (!r[2].empty() || !r[3].empty()) {
            throw DataError(path + ": non-branch with branch fields, row " + std::to_string(i));
        }
        trace.push_back(ins);
    }
    if (trace.empty()) throw DataError(path + ": no instructions");
    return trace;
}

} // namespace wb
