#include "wb/power_model.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "wb/csvio.hpp"
#include "wb/errors.hpp"
#include "wb/kvfile.hpp"

namespace wb {

Style style_from_string(const std::string& name) {
    if (name == "sl") return Style::SL;
    if (name == "cml") return Style::CML;
    throw ConfigError("unknown logic style '" + name + "' (expected sl or cml)");
}

std::string style_name(Style s) { return s == Style::SL ? "sl" : "cml"; }

namespace {

const char* kTechKeys[2] = {"cmos", "tfet"};

double tech_field(const KvSection& sec, const std::string& stem, int col,
                  const std::string& context) {
    const std::string key = stem + "." + kTechKeys[col];
    return parse_double(sec.get(key), context + " " + key);
}

void check_non_negative(double v, const std::string& what) {
    if (!(v >= 0.0)) throw DataError(what + " must be >= 0");
}

} // namespace

TechLibrary load_tech_library(const std::string& path) {
    const KvFile file = parse_kv_file(path);
    TechLibrary lib;
    bool saw_format = false;

    for (const auto& sec : file.sections) {
        if (sec.name.empty()) {
            for (const auto& [k, v] : sec.entries) {
                if (k == "format") {
                    if (parse_int(v, path) != 1) throw DataError(path + ": unsupported format");
                    saw_format = true;
                } else {
                    throw DataError(path + ": unknown top-level key '" + k + "'");
                }
            }
        } else if (sec.name == "library") {
            for (const auto& [k, v] : sec.entries) {
                if (k == "name") lib.name = v;
                else if (k == "technologies") {
                    if (v != "cmos,tfet")
                        throw DataError(path + ": expected technologies = cmos,tfet");
                } else {
                    throw DataError(path + ": unknown [library] key '" + k + "'");
                }
            }
        } else if (sec.name == "style.cml") {
            for (const auto& [k, v] : sec.entries) {
                if (k == "area_factor.cmos")
                    lib.cml_area_factor[0] = parse_double(v, path + " " + k);
                else if (k == "area_factor.tfet")
                    lib.cml_area_factor[1] = parse_double(v, path + " " + k);
                else
                    throw DataError(path + ": unknown [style.cml] key '" + k + "'");
            }
        } else if (sec.name.rfind("cell.", 0) == 0) {
            CellSpec cell;
            cell.name = sec.name.substr(5);
            if (cell.name.empty()) throw DataError(path + ": empty cell name");
            for (const auto& [k, v] : sec.entries) {
                const std::string context = path + " [" + sec.name + "]";
                if (k == "area.cmos" || k == "area.tfet" || k == "leak.cmos" ||
                    k == "leak.tfet" || k == "switch.cmos" || k == "switch.tfet" ||
                    k == "cml_bias.cmos" || k == "cml_bias.tfet" || k == "cml_ripple") {
                    // validated below through the stem readers
                } else {
                    throw DataError(context + ": unknown key '" + k + "'");
                }
            }
            for (int col = 0; col < 2; ++col) {
                const std::string context = path + " [" + sec.name + "]";
                cell.area[col] = tech_field(sec, "area", col, context);
                cell.leak[col] = tech_field(sec, "leak", col, context);
                cell.switch_fj[col] = tech_field(sec, "switch", col, context);
                cell.cml_bias[col] = tech_field(sec, "cml_bias", col, context);
                check_non_negative(cell.area[col], context + " area");
                check_non_negative(cell.leak[col], context + " leak");
                check_non_negative(cell.switch_fj[col], context + " switch");
                check_non_negative(cell.cml_bias[col], context + " cml_bias");
            }
            cell.cml_ripple = parse_double(sec.get("cml_ripple"), path + " cml_ripple");
            if (!(cell.cml_ripple >= 0.0 && cell.cml_ripple < 1.0))
                throw DataError(path + " [" + sec.name + "]: cml_ripple must be in [0, 1)");
            if (!lib.cells.emplace(cell.name, cell).second)
                throw DataError(path + ": duplicate cell '" + cell.name + "'");
        } else {
            throw DataError(path + ": unknown section [" + sec.name + "]");
        }
    }
    if (!saw_format) throw DataError(path + ": missing format = 1");
    if (lib.cells.empty()) throw DataError(path + ": no cells defined");
    return lib;
}

ModuleSet load_modules(const std::string& path, const TechLibrary& lib) {
    const KvFile file = parse_kv_file(path);
    ModuleSet modules;
    bool saw_format = false;

    for (const auto& sec : file.sections) {
        if (sec.name.empty()) {
            for (const auto& [k, v] : sec.entries) {
                if (k == "format") {
                    if (parse_int(v, path) != 1) throw DataError(path + ": unsupported format");
                    saw_format = true;
                } else {
                    throw DataError(path + ": unknown top-level key '" + k + "'");
                }
            }
            continue;
        }
        if (sec.name.rfind("module.", 0) != 0)
            throw DataError(path + ": unknown section [" + sec.name + "]");
        ModuleInventory inv;
        inv.name = sec.name.substr(7);
        if (inv.name.empty()) throw DataError(path + ": empty module name");
        for (const auto& [k, v] : sec.entries) {
            if (k == "style") {
                inv.style = style_from_string(v);
            } else if (k == "cells") {
                for (const std::string& item : split_list(v)) {
                    auto colon = item.find(':');
                    if (colon == std::string::npos)
                        throw DataError(path + " [" + sec.name + "]: expected cell:count, got '" +
                                        item + "'");
                    std::string cell = trim(item.substr(0, colon));
                    long long count = parse_int(item.substr(colon + 1), path + " " + sec.name);
                    if (count <= 0)
                        throw DataError(path + " [" + sec.name + "]: counts must be positive");
                    if (!lib.cells.count(cell))
                        throw DataError(path + " [" + sec.name + "]: unknown cell '" + cell + "'");
                    inv.counts.emplace_back(cell, count);
                }
            } else {
                throw DataError(path + " [" + sec.name + "]: unknown key '" + k + "'");
            }
        }
        if (inv.counts.empty())
            throw DataError(path + " [" + sec.name + "]: no cells listed");
        if (!modules.emplace(inv.name, inv).second)
            throw DataError(path + ": duplicate module '" + inv.name + "'");
    }
    if (!saw_format) throw DataError(path + ": missing format = 1");
    return modules;
}

namespace {

const CellSpec& lookup_cell(const TechLibrary& lib, const std::string& name) {
    auto it = lib.cells.find(name);
    if (it == lib.cells.end()) throw DataError("unknown cell '" + name + "'");
    return it->second;
}

} // namespace

double estimate_area(const ModuleInventory& inv, const TechLibrary& lib, Tech tech) {
    const int col = tech_col(tech);
    double area = 0.0;
    for (const auto& [cell, count] : inv.counts)
        area += double(count) * lookup_cell(lib, cell).area[col];
    if (inv.style == Style::CML) area *= lib.cml_area_factor[col];
    return area;
}

double estimate_avg_power(const ModuleInventory& inv, const TechLibrary& lib, Tech tech,
                          double activity) {
    if (!(activity >= 0.0)) throw ConfigError("estimate_avg_power: activity must be >= 0");
    const int col = tech_col(tech);
    double power = 0.0;
    for (const auto& [cell, count] : inv.counts) {
        const CellSpec& spec = lookup_cell(lib, cell);
        if (inv.style == Style::SL) {
            // switch energy is fJ per toggle; 1 fJ/s = 1e-3 pW.
            power += double(count) * (spec.leak[col] + spec.switch_fj[col] * 1e-3 * activity);
        } else {
            power += double(count) * spec.cml_bias[col];
        }
    }
    return power;
}

std::vector<RatioEntry> relative_table(const std::vector<ModuleInventory>& modules,
                                       const ModuleInventory& reference,
                                       const TechLibrary& lib) {
    std::array<double, 2> ref_area{}, ref_power{};
    for (int col = 0; col < 2; ++col) {
        Tech t = col ? Tech::TFET : Tech::MOSFET;
        ref_area[col] = estimate_area(reference, lib, t);
        ref_power[col] = estimate_avg_power(reference, lib, t);
        if (ref_area[col] == 0.0 || ref_power[col] == 0.0)
            throw DataError("relative_table: zero reference estimate for '" + reference.name + "'");
    }
    std::vector<RatioEntry> out;
    out.reserve(modules.size());
    for (const auto& m : modules) {
        RatioEntry e;
        e.module = m.name;
        e.style = m.style;
        for (int col = 0; col < 2; ++col) {
            Tech t = col ? Tech::TFET : Tech::MOSFET;
            e.area_ratio[col] = estimate_area(m, lib, t) / ref_area[col];
            e.power_ratio[col] = estimate_avg_power(m, lib, t) / ref_power[col];
        }
        out.push_back(std::move(e));
    }
    return out;
}

namespace {

void expect_header(const std::vector<std::vector<std::string>>& rows,
                   const std::vector<std::string>& expected, const std::string& path) {
    if (rows.empty()) throw DataError(path + ": empty file");
    if (rows[0] != expected) throw DataError(path + ": unexpected header");
}

} // namespace

ReferenceData load_reference_data(const std::string& reference_dir) {
    ReferenceData ref;

    const std::string sbox_path = reference_dir + "/sbox_reference.csv";
    auto rows = read_csv(sbox_path);
    expect_header(rows, {"tech", "style", "area_nm2", "power_pw"}, sbox_path);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 4) throw DataError(sbox_path + ": bad row");
        ref.sbox.push_back(SboxReferenceRow{tech_from_string(r[0]), style_from_string(r[1]),
                                            parse_double(r[2], sbox_path),
                                            parse_double(r[3], sbox_path)});
    }

    const std::string ratio_path = reference_dir + "/crypto_ratios.csv";
    rows = read_csv(ratio_path);
    expect_header(rows,
                  {"row", "numerator", "denominator", "cmos_sl_area", "cmos_sl_power",
                   "cmos_cml_area", "cmos_cml_power", "tfet_sl_area", "tfet_sl_power",
                   "tfet_cml_area", "tfet_cml_power"},
                  ratio_path);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 11) throw DataError(ratio_path + ": bad row");
        CryptoRatioRow row;
        row.label = r[0];
        row.numerator = r[1];
        row.denominator = r[2];
        int cell = 3;
        for (int col = 0; col < 2; ++col)
            for (int s = 0; s < 2; ++s) {
                row.area[col][s] = parse_double(r[std::size_t(cell++)], ratio_path);
                row.power[col][s] = parse_double(r[std::size_t(cell++)], ratio_path);
            }
        ref.crypto_ratios.push_back(std::move(row));
    }

    const std::string pipe_path = reference_dir + "/pipeline_cells.csv";
    rows = read_csv(pipe_path);
    expect_header(rows,
                  {"stage", "module", "cmos_area_um2", "cmos_power_uw", "tfet_area_um2",
                   "tfet_power_uw"},
                  pipe_path);
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != 6) throw DataError(pipe_path + ": bad row");
        PipelineCellRow row;
        row.stage = r[0];
        row.module = r[1];
        row.area_um2[0] = parse_double(r[2], pipe_path);
        row.power_uw[0] = parse_double(r[3], pipe_path);
        row.area_um2[1] = parse_double(r[4], pipe_path);
        row.power_uw[1] = parse_double(r[5], pipe_path);
        ref.pipeline.push_back(std::move(row));
    }

    const std::string trojan_path = reference_dir + "/trojan_footprint.csv";
    rows = read_csv(trojan_path);
    if (rows.empty() || rows[0].size() < 2 || rows[0][0] != "trojan" ||
        rows[0][1] != "host_module")
        throw DataError(trojan_path + ": unexpected header");
    const auto& header = rows[0];
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.size() != header.size()) throw DataError(trojan_path + ": bad row");
        TrojanFootprintRow row;
        row.trojan = r[0];
        row.host_module = r[1];
        for (std::size_t c = 2; c < r.size(); ++c) {
            const std::string& col = header[c];
            double v = parse_double(r[c], trojan_path);
            const std::string ipc_prefix = "ipc_degradation_";
            if (col.rfind(ipc_prefix, 0) == 0)
                row.ipc_degradation_pct[col.substr(ipc_prefix.size())] = v;
            else if (col == "cmos_area_pct") row.area_pct[0] = v;
            else if (col == "tfet_area_pct") row.area_pct[1] = v;
            else if (col == "cmos_power_pct") row.power_pct[0] = v;
            else if (col == "tfet_power_pct") row.power_pct[1] = v;
            else throw DataError(trojan_path + ": unknown column '" + col + "'");
        }
        ref.trojan.push_back(std::move(row));
    }
    return ref;
}

const ModuleInventory& DataContext::module(const std::string& name) const {
    auto it = modules.find(name);
    if (it == modules.end()) throw DataError("unknown module '" + name + "'");
    return it->second;
}

DataContext load_data(const std::string& data_dir) {
    DataContext ctx;
    ctx.data_dir = data_dir;
    ctx.lib = load_tech_library(data_dir + "/tech_library.txt");
    ctx.modules = load_modules(data_dir + "/modules.txt", ctx.lib);
    ctx.ref = load_reference_data(data_dir + "/reference");
    return ctx;
}

namespace {

double rel_dev(double computed, double reference) {
    if (reference == 0.0) return computed == 0.0 ? 0.0 : HUGE_VAL;
    return std::abs(computed - reference) / std::abs(reference);
}

void push_row(std::vector<DeviationRow>& rows, const std::string& module, Tech tech, Style style,
              const std::string& metric, double computed, double reference, double tolerance) {
    double dev = rel_dev(computed, reference);
    rows.push_back(DeviationRow{module, tech, style, metric, computed, reference, dev,
                                dev > tolerance});
}

} // namespace

std::vector<DeviationRow> compare_reference(const DataContext& ctx, double tolerance) {
    std::vector<DeviationRow> rows;
    const TechLibrary& lib = ctx.lib;

    for (const auto& r : ctx.ref.sbox) {
        const ModuleInventory& inv = ctx.module("sbox_" + style_name(r.style));
        push_row(rows, inv.name, r.tech, r.style, "area_nm2", estimate_area(inv, lib, r.tech),
                 r.area_nm2, tolerance);
        push_row(rows, inv.name, r.tech, r.style, "power_pw",
                 estimate_avg_power(inv, lib, r.tech), r.power_pw, tolerance);
    }

    for (const auto& r : ctx.ref.crypto_ratios) {
        for (int s = 0; s < 2; ++s) {
            const Style style = s ? Style::CML : Style::SL;
            const ModuleInventory& num = ctx.module(r.numerator + "_" + style_name(style));
            const ModuleInventory& den = ctx.module(r.denominator + "_" + style_name(style));
            const auto table = relative_table({num}, den, lib);
            for (int col = 0; col < 2; ++col) {
                const Tech tech = col ? Tech::TFET : Tech::MOSFET;
                push_row(rows, r.label, tech, style, "area_ratio", table[0].area_ratio[col],
                         r.area[col][s], tolerance);
                push_row(rows, r.label, tech, style, "power_ratio", table[0].power_ratio[col],
                         r.power[col][s], tolerance);
            }
        }
    }

    for (const auto& r : ctx.ref.pipeline) {
        std::string name = r.module;
        std::transform(name.begin(), name.end(), name.begin(),
                       [](unsigned char c) { return std::tolower(c); });
        const ModuleInventory& inv = ctx.module(name);
        for (int col = 0; col < 2; ++col) {
            const Tech tech = col ? Tech::TFET : Tech::MOSFET;
            push_row(rows, r.module, tech, inv.style, "area_um2",
                     estimate_area(inv, lib, tech) / 1e6, r.area_um2[col], tolerance);
            push_row(rows, r.module, tech, inv.style, "power_uw",
                     estimate_avg_power(inv, lib, tech) / 1e6, r.power_uw[col], tolerance);
        }
    }

    for (const auto& r : ctx.ref.trojan) {
        const ModuleInventory& healthy = ctx.module(r.trojan + "_healthy");
        const ModuleInventory& infected = ctx.module(r.trojan + "_infected");
        for (int col = 0; col < 2; ++col) {
            const Tech tech = col ? Tech::TFET : Tech::MOSFET;
            double ha = estimate_area(healthy, lib, tech);
            double hp = estimate_avg_power(healthy, lib, tech);
            double ia = estimate_area(infected, lib, tech);
            double ip = estimate_avg_power(infected, lib, tech);
            push_row(rows, r.trojan, tech, healthy.style, "area_delta_pct",
                     100.0 * (ia - ha) / ha, r.area_pct[col], tolerance);
            push_row(rows, r.trojan, tech, healthy.style, "power_delta_pct",
                     100.0 * (ip - hp) / hp, r.power_pct[col], tolerance);
        }
    }
    return rows;
}

std::string deviation_report_csv(const std::vector<DeviationRow>& rows,
                                 const std::string& stamp) {
    std::string out = stamp + "\n";
    out += "module,tech,style,metric,computed,reference,rel_dev\n";
    for (const auto& r : rows) {
        out += r.module + ',' + tech_data_name(r.tech) + ',' + style_name(r.style) + ',' +
               r.metric + ',' + fmt_double(r.computed) + ',' + fmt_double(r.reference) + ',' +
               fmt_double(r.rel_dev) + '\n';
    }
    return out;
}

} // namespace wb
