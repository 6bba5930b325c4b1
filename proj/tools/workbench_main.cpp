// Experiment runner: every module behind one binary with subcommands.
// Exit codes: 0 success, 2 usage/config error, 3 I/O or data error.

#include <cstdio>
#include <iostream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "wb/correlation.hpp"
#include "wb/csvio.hpp"
#include "wb/device_model.hpp"
#include "wb/errors.hpp"
#include "wb/kvfile.hpp"
#include "wb/leakage.hpp"
#include "wb/pipeline.hpp"
#include "wb/power_model.hpp"
#include "wb/rng.hpp"
#include "wb/version.hpp"

#ifndef WB_DATA_DIR_DEFAULT
#define WB_DATA_DIR_DEFAULT "data"
#endif

namespace {

struct Global {
    std::uint64_t seed = 1;
    std::string out_dir = "out";
    std::string data_dir = WB_DATA_DIR_DEFAULT;
    CLI::App* app = nullptr;

    // Hash the resolved experiment configuration. Output/data paths are where
    // results land, not what was computed, so they stay out of the hash.
    std::string stamp() const {
        std::istringstream in(app->config_to_str(true, false));
        std::string line, kept;
        while (std::getline(in, line)) {
            if (line.rfind("out=", 0) == 0 || line.rfind("data=", 0) == 0 ||
                line.rfind("config=", 0) == 0)
                continue;
            kept += line;
            kept += '\n';
        }
        return wb::csv_stamp(seed, wb::fnv1a_hex(kept));
    }
    std::string path(const std::string& name) const { return out_dir + "/" + name; }
};

// ---- iv-sweep ----

struct IvArgs {
    std::string tech = "tfet";
    int points = 101;
    double vdd = 0.0, ss = 0.0, i_on = 0.0, i_off = 0.0, temperature = 0.0;
    CLI::Option *vdd_opt = nullptr, *ss_opt = nullptr, *ion_opt = nullptr, *ioff_opt = nullptr,
                *temp_opt = nullptr;
};

void run_iv_sweep(const Global& g, const IvArgs& a) {
    wb::Tech tech = wb::tech_from_string(a.tech);
    wb::DeviceParams p = tech == wb::Tech::TFET ? wb::tfet_defaults() : wb::mosfet_defaults();
    if (a.vdd_opt->count()) p.vdd = a.vdd;
    if (a.ss_opt->count()) p.ss = a.ss;
    if (a.ion_opt->count()) p.i_on = a.i_on;
    if (a.ioff_opt->count()) p.i_off = a.i_off;
    if (a.temp_opt->count()) p.temperature = a.temperature;
    wb::validate(p);
    const wb::IvCurve curve = wb::iv_sweep(p, a.points);
    const std::string file = g.path("iv_" + wb::tech_name(tech) + ".csv");
    wb::atomic_write(file, g.stamp() + "\n" + wb::iv_curve_csv(curve));
    std::cout << file << "\n";
}

// ---- estimate ----

struct EstimateArgs {
    std::vector<std::string> modules;
    double activity = 1.0;
    double tolerance = 1e-6;
};

void run_estimate(const Global& g, const EstimateArgs& a) {
    const wb::DataContext ctx = wb::load_data(g.data_dir);
    std::vector<std::string> names = a.modules;
    if (names.empty())
        for (const auto& [name, inv] : ctx.modules) names.push_back(name);
    for (const auto& name : names)
        if (!ctx.modules.count(name))
            throw wb::ConfigError("unknown module '" + name + "'");

    std::string est = g.stamp() + "\n";
    est += "module,tech,style,area_nm2,power_pw\n";
    for (const auto& name : names) {
        const wb::ModuleInventory& inv = ctx.module(name);
        for (wb::Tech tech : {wb::Tech::MOSFET, wb::Tech::TFET}) {
            est += name + ',' + wb::tech_data_name(tech) + ',' + wb::style_name(inv.style) + ',' +
                   wb::fmt_double(wb::estimate_area(inv, ctx.lib, tech)) + ',' +
                   wb::fmt_double(wb::estimate_avg_power(inv, ctx.lib, tech, a.activity)) + '\n';
        }
    }
    wb::atomic_write(g.path("estimate.csv"), est);

    const auto rows = wb::compare_reference(ctx, a.tolerance);
    wb::atomic_write(g.path("reference_check.csv"), wb::deviation_report_csv(rows, g.stamp()));
    std::size_t flagged = 0;
    for (const auto& r : rows) flagged += r.flagged ? 1 : 0;
    std::cout << g.path("estimate.csv") << "\n"
              << g.path("reference_check.csv") << " (" << rows.size() << " rows, " << flagged
              << " flagged)\n";
    if (flagged > 0)
        throw wb::DataError(std::to_string(flagged) + " reference cells deviate beyond tolerance");
}

// ---- shared leakage/experiment plumbing ----

struct LeakArgs {
    std::string tech = "tfet";
    std::string style = "sl";
    int samples = 2000;
    int leak_sample = -1; // default: n_samples / 2
    double alpha = 0.0, baseline = 0.0, bias = 0.0, ripple = 0.0, noise = 0.0;
    std::string reseed = "row";
    CLI::Option *alpha_opt = nullptr, *baseline_opt = nullptr, *bias_opt = nullptr,
                *ripple_opt = nullptr, *noise_opt = nullptr;

    void add_options(CLI::App* cmd, bool with_style) {
        cmd->add_option("--tech", tech, "technology: tfet, mosfet, or cmos")
            ->capture_default_str();
        if (with_style)
            cmd->add_option("--style", style, "logic style: sl, cml, or both")
                ->capture_default_str();
        cmd->add_option("--samples", samples, "samples per trace")->capture_default_str();
        cmd->add_option("--leak-sample", leak_sample, "informative sample index (default middle)");
        alpha_opt = cmd->add_option("--alpha", alpha, "SL leakage gain per HW unit");
        baseline_opt = cmd->add_option("--baseline", baseline, "SL constant power offset");
        bias_opt = cmd->add_option("--bias", bias, "CML constant bias power");
        ripple_opt = cmd->add_option("--ripple", ripple, "CML data-dependent fraction");
        noise_opt = cmd->add_option("--noise", noise, "Gaussian noise sigma");
        cmd->add_option("--reseed", reseed, "per-row noise stream key: row or plaintext")
            ->capture_default_str();
    }

    wb::LeakageConfig build(wb::Tech tech_e, wb::Style style_e, std::uint64_t seed) const {
        wb::LeakageConfig cfg = wb::preset(tech_e, style_e);
        cfg.n_samples = samples;
        cfg.leak_sample = leak_sample >= 0 ? leak_sample : samples / 2;
        if (alpha_opt->count()) cfg.alpha = alpha;
        if (baseline_opt->count()) cfg.baseline = baseline;
        if (bias_opt->count()) cfg.bias_power = bias;
        if (ripple_opt->count()) cfg.ripple = ripple;
        if (noise_opt->count()) cfg.noise_sigma = noise;
        cfg.seed = seed;
        cfg.reseed = wb::reseed_from_string(reseed);
        wb::validate(cfg);
        return cfg;
    }
};

std::uint8_t parse_key_byte(const std::string& hex) {
    const auto bytes = wb::from_hex(hex, "key byte");
    if (bytes.size() != 1) throw wb::ConfigError("key byte must be exactly two hex digits");
    return bytes[0];
}

std::vector<std::uint8_t> make_plaintexts(const std::string& mode, int count, int key_byte_index,
                                          std::uint64_t seed) {
    if (mode == "exhaustive") {
        std::vector<std::uint8_t> p(256);
        for (int i = 0; i < 256; ++i) p[std::size_t(i)] = std::uint8_t(i);
        return p;
    }
    if (mode == "random") {
        if (count < 1) throw wb::ConfigError("--count must be >= 1 for random plaintexts");
        std::vector<std::uint8_t> p(static_cast<std::size_t>(count));
        for (int i = 0; i < count; ++i)
            p[std::size_t(i)] =
                std::uint8_t(wb::counter_hash(seed, 0x706C61696EULL, std::uint64_t(i)) & 0xFF);
        return p;
    }
    if (mode == "table3") {
        const wb::AttackInputs t3 = wb::table3_inputs();
        std::vector<std::uint8_t> p;
        for (const auto& block : t3.plaintexts) p.push_back(block[std::size_t(key_byte_index)]);
        return p;
    }
    throw wb::ConfigError("unknown plaintext mode '" + mode +
                          "' (expected exhaustive, random, or table3)");
}

// ---- synth ----

struct SynthArgs {
    LeakArgs leak;
    std::string plaintexts = "exhaustive";
    int count = 64;
    std::string key = "00";
    int key_byte = 0;
    bool table3 = false;
    std::string format = "csv";
};

void run_synth(const Global& g, const SynthArgs& a) {
    const wb::Tech tech = wb::tech_from_string(a.leak.tech);
    const wb::Style style = wb::style_from_string(a.leak.style);
    if (a.key_byte < 0 || a.key_byte > 15) throw wb::ConfigError("--key-byte must be in 0..15");
    std::uint8_t key = parse_key_byte(a.key);
    std::string mode = a.plaintexts;
    if (a.table3) {
        mode = "table3";
        key = wb::table3_inputs().key[std::size_t(a.key_byte)];
    }
    const auto pts = make_plaintexts(mode, a.count, a.key_byte, g.seed);
    const wb::LeakageConfig cfg = a.leak.build(tech, style, g.seed);
    const wb::TraceSet ts = wb::synth_traceset(pts, key, cfg);
    if (a.format != "csv" && a.format != "tset" && a.format != "both")
        throw wb::ConfigError("--format must be csv, tset, or both");
    if (a.format == "csv" || a.format == "both") {
        wb::atomic_write(g.path("traces.csv"), wb::traceset_csv(ts, g.stamp()));
        std::cout << g.path("traces.csv") << "\n";
    }
    if (a.format == "tset" || a.format == "both") {
        wb::write_tset(g.path("traces.tset"), ts);
        std::cout << g.path("traces.tset") << "\n";
    }
}

// ---- cpa ----

struct CpaArgs {
    LeakArgs leak;
    std::string plaintexts = "exhaustive";
    int count = 64;
    std::string key = "00";
    int key_byte = -1; // with --table3: -1 = all sixteen
    bool table3 = false;
    bool dump = false;
};

void run_cpa(const Global& g, const CpaArgs& a) {
    const wb::Tech tech = wb::tech_from_string(a.leak.tech);
    std::vector<wb::Style> styles;
    if (a.leak.style == "both") styles = {wb::Style::SL, wb::Style::CML};
    else styles = {wb::style_from_string(a.leak.style)};

    struct Job {
        int key_byte_index;
        std::uint8_t key;
        std::vector<std::uint8_t> plaintexts;
    };
    std::vector<Job> jobs;
    if (a.table3) {
        const wb::AttackInputs t3 = wb::table3_inputs();
        std::vector<int> indices;
        if (a.key_byte >= 0) {
            if (a.key_byte > 15) throw wb::ConfigError("--key-byte must be in 0..15");
            indices = {a.key_byte};
        } else {
            for (int i = 0; i < 16; ++i) indices.push_back(i);
        }
        for (int idx : indices)
            jobs.push_back(Job{idx, t3.key[std::size_t(idx)],
                               make_plaintexts(a.plaintexts, a.count, idx, g.seed)});
    } else {
        const int idx = a.key_byte >= 0 ? a.key_byte : 0;
        if (idx > 15) throw wb::ConfigError("--key-byte must be in 0..15");
        jobs.push_back(
            Job{idx, parse_key_byte(a.key), make_plaintexts(a.plaintexts, a.count, idx, g.seed)});
    }

    std::vector<wb::ExperimentResult> results;
    for (wb::Style style : styles) {
        const wb::LeakageConfig cfg = a.leak.build(tech, style, g.seed);
        for (const Job& job : jobs) {
            const wb::TraceSet ts = wb::synth_traceset(job.plaintexts, job.key, cfg);
            const wb::CorrelationMatrix cm = wb::cpa_attack(ts);
            wb::ExperimentResult r;
            r.tech = tech;
            r.style = style;
            r.key_byte_index = job.key_byte_index;
            r.ranking = wb::rank_keys(cm, job.key);
            results.push_back(r);
            if (a.dump) {
                const std::string name = "cpa_dump_" + wb::tech_data_name(tech) + "_" +
                                         wb::style_name(style) + "_b" +
                                         std::to_string(job.key_byte_index) + ".csv";
                wb::atomic_write(g.path(name), wb::correlation_dump_csv(cm, g.stamp()));
            }
        }
    }
    wb::atomic_write(g.path("cpa_report.csv"), wb::attack_report_csv(results, g.stamp()));
    std::cout << g.path("cpa_report.csv") << "\n";
}

// ---- trojan ----

struct TrojanArgs {
    std::string trojan = "none";
    std::string trigger = "clock";
    std::uint64_t period = 1000;
    std::uint64_t threshold = 0;
    std::string trace_file;
    std::uint64_t instructions = 20000;
    double branch_fraction = 0.5;
    double taken_bias = 0.9;
    int sites = 8;
    int trace_seeds = 1;
    int fetch_width = 1;
    int mispredict_penalty = 9;
    int refetch_penalty = 3;
    int bht = 2;
    bool no_footprint = false;
};

void run_trojan(const Global& g, const TrojanArgs& a) {
    wb::PipelineConfig cfg;
    cfg.fetch_width = a.fetch_width;
    cfg.mispredict_penalty = a.mispredict_penalty;
    cfg.refetch_penalty = a.refetch_penalty;
    cfg.bht_entries = a.bht;
    wb::validate(cfg);

    std::optional<wb::TrojanSpec> spec;
    if (a.trojan != "none") {
        wb::TrojanSpec s;
        s.kind = wb::trojan_kind_from_string(a.trojan);
        if (a.trigger == "clock") s.trigger = wb::TriggerKind::ClockCounter;
        else if (a.trigger == "condition") s.trigger = wb::TriggerKind::Condition;
        else throw wb::ConfigError("unknown trigger '" + a.trigger + "'");
        s.period = a.period;
        s.condition_threshold = a.threshold;
        wb::validate(s);
        spec = s;
    }

    struct Labeled {
        std::string label;
        std::vector<wb::InstructionRecord> trace;
    };
    std::vector<Labeled> traces;
    if (!a.trace_file.empty()) {
        traces.push_back({a.trace_file, wb::parse_instruction_trace(a.trace_file)});
    } else {
        for (int s = 0; s < a.trace_seeds; ++s) {
            wb::TraceGenParams params;
            params.n_instructions = a.instructions;
            params.branch_fraction = a.branch_fraction;
            params.taken_bias = a.taken_bias;
            params.n_sites = a.sites;
            params.seed = g.seed + std::uint64_t(s);
            traces.push_back({"synthetic-" + std::to_string(params.seed),
                              wb::synth_instruction_trace(params)});
        }
    }

    std::string out = g.stamp() + "\n";
    out += "trace,trojan,period,cycles,retired,ipc,mispred,refetch,degradation_pct\n";
    for (const auto& [label, trace] : traces) {
        const wb::PipelineStats healthy = wb::run(trace, cfg, std::nullopt);
        auto row = [&](const std::string& kind, std::uint64_t period,
                       const wb::PipelineStats& st, double degradation) {
            out += label + ',' + kind + ',' + std::to_string(period) + ',' +
                   std::to_string(st.cycles) + ',' + std::to_string(st.retired) + ',' +
                   wb::fmt_double(st.ipc()) + ',' + std::to_string(st.mispredictions) + ',' +
                   std::to_string(st.refetches) + ',' + wb::fmt_double(degradation) + '\n';
        };
        row("none", 0, healthy, 0.0);
        if (spec) {
            const wb::PipelineStats infected = wb::run(trace, cfg, spec);
            row(wb::trojan_kind_name(spec->kind),
                spec->trigger == wb::TriggerKind::ClockCounter ? spec->period : 0, infected,
                wb::ipc_degradation(healthy, infected));
        }
    }
    wb::atomic_write(g.path("trojan_results.csv"), out);
    std::cout << g.path("trojan_results.csv") << "\n";

    if (!a.no_footprint) {
        const wb::DataContext ctx = wb::load_data(g.data_dir);
        std::string fp = g.stamp() + "\n";
        fp += "trojan,tech,area_delta_pct,power_delta_pct,reference_area_pct,"
              "reference_power_pct,rel_dev_area,rel_dev_power\n";
        for (const auto& row : ctx.ref.trojan) {
            const wb::ModuleInventory& healthy = ctx.module(row.trojan + "_healthy");
            const wb::ModuleInventory& infected = ctx.module(row.trojan + "_infected");
            for (int col = 0; col < 2; ++col) {
                const wb::Tech tech = col ? wb::Tech::TFET : wb::Tech::MOSFET;
                const auto [da, dp] = wb::footprint_delta(healthy, infected, ctx.lib, tech);
                const double ra = row.area_pct[col], rp = row.power_pct[col];
                fp += row.trojan + ',' + wb::tech_data_name(tech) + ',' + wb::fmt_double(da) +
                      ',' + wb::fmt_double(dp) + ',' + wb::fmt_double(ra) + ',' +
                      wb::fmt_double(rp) + ',' + wb::fmt_double(std::abs(da - ra) / ra) + ',' +
                      wb::fmt_double(std::abs(dp - rp) / rp) + '\n';
            }
        }
        wb::atomic_write(g.path("trojan_footprint.csv"), fp);
        std::cout << g.path("trojan_footprint.csv") << "\n";
    }
}

// ---- report ----

void run_report(const Global& g) {
    const wb::DataContext ctx = wb::load_data(g.data_dir);
    wb::atomic_write(g.path("reference_report.csv"),
                     wb::deviation_report_csv(wb::compare_reference(ctx), g.stamp()));
    std::string ipc = g.stamp() + "\n";
    ipc += "trojan,benchmark,ipc_degradation_pct\n";
    for (const auto& row : ctx.ref.trojan)
        for (const auto& [bench, pct] : row.ipc_degradation_pct)
            ipc += row.trojan + ',' + bench + ',' + wb::fmt_double(pct) + '\n';
    wb::atomic_write(g.path("reference_ipc.csv"), ipc);
    std::cout << g.path("reference_report.csv") << "\n" << g.path("reference_ipc.csv") << "\n";
}

} // namespace

int main(int argc, char** argv) {
    CLI::App app{"side-channel & trojan-footprint workbench (analytic device models)"};
    app.require_subcommand(1);
    app.fallthrough(); // let global flags appear after the subcommand name
    app.set_config("--config", "", "experiment config: key = value with [subcommand] sections");
    app.allow_config_extras(false); // unknown config keys are an error

    Global g;
    g.app = &app;
    app.add_option("--seed", g.seed, "top-level seed for all randomness")->capture_default_str();
    app.add_option("--out", g.out_dir, "output directory")->capture_default_str();
    app.add_option("--data", g.data_dir, "data directory with the bundled library")
        ->envname("WORKBENCH_DATA")
        ->capture_default_str();

    auto* iv = app.add_subcommand("iv-sweep", "sweep the analytic transistor I-V curve");
    IvArgs iv_args;
    iv->add_option("--tech", iv_args.tech, "technology: tfet, mosfet, or cmos")
        ->capture_default_str();
    iv->add_option("--points", iv_args.points, "sweep points")->capture_default_str();
    iv_args.vdd_opt = iv->add_option("--vdd", iv_args.vdd, "supply voltage (V)");
    iv_args.ss_opt = iv->add_option("--ss", iv_args.ss, "sub-threshold slope (mV/dec)");
    iv_args.ion_opt = iv->add_option("--ion", iv_args.i_on, "on current (A)");
    iv_args.ioff_opt = iv->add_option("--ioff", iv_args.i_off, "off current (A)");
    iv_args.temp_opt = iv->add_option("--temp", iv_args.temperature, "temperature (K)");
    iv->callback([&] { run_iv_sweep(g, iv_args); });

    auto* est = app.add_subcommand("estimate", "area/power estimates and reference check");
    EstimateArgs est_args;
    est->add_option("--module", est_args.modules, "module name(s); default: all bundled");
    est->add_option("--activity", est_args.activity, "toggles per cell per cycle")
        ->capture_default_str();
    est->add_option("--tolerance", est_args.tolerance, "flag threshold for deviations")
        ->capture_default_str();
    est->callback([&] { run_estimate(g, est_args); });

    auto* synth = app.add_subcommand("synth", "synthesize power traces");
    SynthArgs synth_args;
    synth_args.leak.add_options(synth, /*with_style=*/true);
    synth->add_option("--plaintexts", synth_args.plaintexts,
                      "exhaustive, random, or table3")
        ->capture_default_str();
    synth->add_option("--count", synth_args.count, "trace count for random plaintexts")
        ->capture_default_str();
    synth->add_option("--key", synth_args.key, "key byte (hex)")->capture_default_str();
    synth->add_option("--key-byte", synth_args.key_byte, "key byte index for table3 inputs")
        ->capture_default_str();
    synth->add_flag("--table3", synth_args.table3, "use the bundled attack inputs");
    synth->add_option("--format", synth_args.format, "csv, tset, or both")->capture_default_str();
    synth->callback([&] { run_synth(g, synth_args); });

    auto* cpa = app.add_subcommand("cpa", "correlation power analysis attack");
    CpaArgs cpa_args;
    cpa_args.leak.add_options(cpa, /*with_style=*/true);
    cpa->add_option("--plaintexts", cpa_args.plaintexts, "exhaustive, random, or table3")
        ->capture_default_str();
    cpa->add_option("--count", cpa_args.count, "trace count for random plaintexts")
        ->capture_default_str();
    cpa->add_option("--key", cpa_args.key, "true key byte (hex) when not using --table3")
        ->capture_default_str();
    cpa->add_option("--key-byte", cpa_args.key_byte,
                    "key byte index (with --table3: default all sixteen)");
    cpa->add_flag("--table3", cpa_args.table3, "attack the bundled sixteen key bytes");
    cpa->add_flag("--dump", cpa_args.dump, "write per-guess correlation dumps");
    cpa->callback([&] { run_cpa(g, cpa_args); });

    auto* troj = app.add_subcommand("trojan", "pipeline runs and trojan footprints");
    TrojanArgs troj_args;
    troj->add_option("--trojan", troj_args.trojan, "none, branchflip, or bufferstall")
        ->capture_default_str();
    troj->add_option("--trigger", troj_args.trigger, "clock or condition")->capture_default_str();
    troj->add_option("--period", troj_args.period, "clock trigger period (cycles)")
        ->capture_default_str();
    troj->add_option("--threshold", troj_args.threshold, "condition trigger retired-count")
        ->capture_default_str();
    troj->add_option("--trace", troj_args.trace_file, "instruction trace CSV (pc,kind,taken,target)");
    troj->add_option("--instructions", troj_args.instructions, "synthetic trace length")
        ->capture_default_str();
    troj->add_option("--branch-fraction", troj_args.branch_fraction, "synthetic branch fraction")
        ->capture_default_str();
    troj->add_option("--taken-bias", troj_args.taken_bias, "synthetic taken probability")
        ->capture_default_str();
    troj->add_option("--sites", troj_args.sites, "synthetic branch sites")->capture_default_str();
    troj->add_option("--trace-seeds", troj_args.trace_seeds, "synthetic traces to run")
        ->capture_default_str();
    troj->add_option("--fetch-width", troj_args.fetch_width, "instructions per fetch cycle")
        ->capture_default_str();
    troj->add_option("--mispredict-penalty", troj_args.mispredict_penalty, "cycles per mispredict")
        ->capture_default_str();
    troj->add_option("--refetch-penalty", troj_args.refetch_penalty, "cycles per forced refetch")
        ->capture_default_str();
    troj->add_option("--bht", troj_args.bht, "branch history table entries (power of two)")
        ->capture_default_str();
    troj->add_flag("--no-footprint", troj_args.no_footprint,
                   "skip the bundled footprint comparison");
    troj->callback([&] { run_trojan(g, troj_args); });

    auto* rep = app.add_subcommand("report", "emit the bundled reference tables and checks");
    rep->callback([&] { run_report(g); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const wb::ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const wb::DataError& e) {
        std::cerr << "data error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return 0;
}
