#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "wb/device_model.hpp"

namespace wb {

enum class Style { SL, CML };

Style style_from_string(const std::string& name);
std::string style_name(Style s); // "sl" / "cml"

// Index into the per-technology arrays below: 0 = cmos, 1 = tfet.
constexpr int tech_col(Tech t) { return t == Tech::TFET ? 1 : 0; }

struct CellSpec {
    std::string name;
    std::array<double, 2> area{};      // nm^2
    std::array<double, 2> leak{};      // pW (static-logic leakage)
    std::array<double, 2> switch_fj{}; // fJ per output toggle
    std::array<double, 2> cml_bias{};  // pW constant draw when styled as CML
    double cml_ripple = 0.0;           // data-dependent fraction of bias power
};

struct ModuleInventory {
    std::string name;
    Style style = Style::SL;
    std::vector<std::pair<std::string, long long>> counts; // cell -> count
};

struct TechLibrary {
    std::string name;
    std::map<std::string, CellSpec> cells;
    // CML area style factor per technology column (area multiplier).
    std::array<double, 2> cml_area_factor{1.0, 1.0};
};

using ModuleSet = std::map<std::string, ModuleInventory>;

// Parse data/tech_library.txt / data/modules.txt. Unknown keys are
// rejected; all failures throw DataError with file/line context.
TechLibrary load_tech_library(const std::string& path);
ModuleSet load_modules(const std::string& path, const TechLibrary& lib);

// Area estimate in nm^2: sum of count * cell area, scaled by the CML
// area factor for CML-styled modules. Throws DataError on unknown cells.
double estimate_area(const ModuleInventory& inv, const TechLibrary& lib, Tech tech);

// Average power in pW. SL: count * (leak + switch_fj * 1e-3 * activity),
// activity in toggles per cell per second of the evaluation cycle
// (default one toggle per cycle). CML: count * cml_bias, activity-free.
// Throws ConfigError on negative activity, DataError on unknown cells.
double estimate_avg_power(const ModuleInventory& inv, const TechLibrary& lib, Tech tech,
                          double activity = 1.0);

struct RatioEntry {
    std::string module;
    Style style;
    std::array<double, 2> area_ratio{};  // per tech column
    std::array<double, 2> power_ratio{};
};

// Module estimates divided by the reference module's estimates, per
// technology. Throws DataError when a reference estimate is zero.
std::vector<RatioEntry> relative_table(const std::vector<ModuleInventory>& modules,
                                       const ModuleInventory& reference,
                                       const TechLibrary& lib);

// ---- bundled reference datasets (read-only mirrors of the
// characterization tables the library is calibrated against) ----

struct SboxReferenceRow {
    Tech tech;
    Style style;
    double area_nm2;
    double power_pw;
};

struct CryptoRatioRow {
    std::string label;       // e.g. "katan_over_sbox"
    std::string numerator;   // module stem; inventories are "<stem>_sl"/"<stem>_cml"
    std::string denominator;
    // indexed [tech_col][style: 0 = sl, 1 = cml]
    double area[2][2];
    double power[2][2];
};

struct PipelineCellRow {
    std::string stage;
    std::string module; // inventory name is the lowercased module name
    double area_um2[2];
    double power_uw[2];
};

struct TrojanFootprintRow {
    std::string trojan; // inventory pair "<trojan>_healthy"/"<trojan>_infected"
    std::string host_module;
    std::map<std::string, double> ipc_degradation_pct; // per benchmark name
    double area_pct[2];
    double power_pct[2];
};

struct ReferenceData {
    std::vector<SboxReferenceRow> sbox;
    std::vector<CryptoRatioRow> crypto_ratios;
    std::vector<PipelineCellRow> pipeline;
    std::vector<TrojanFootprintRow> trojan;
};

ReferenceData load_reference_data(const std::string& reference_dir);

// Library, bundled inventories, and reference tables loaded together
// from one data directory.
struct DataContext {
    std::string data_dir;
    TechLibrary lib;
    ModuleSet modules;
    ReferenceData ref;

    const ModuleInventory& module(const std::string& name) const; // DataError if absent
};

DataContext load_data(const std::string& data_dir);

// One comparison row of computed-vs-reference. Report CSV header:
// module,tech,style,metric,computed,reference,rel_dev
struct DeviationRow {
    std::string module;
    Tech tech;
    Style style;
    std::string metric;
    double computed;
    double reference;
    double rel_dev;
    bool flagged;
};

// Recompute every bundled reference value from the library + inventories
// and report relative deviations; rows above `tolerance` are flagged.
std::vector<DeviationRow> compare_reference(const DataContext& ctx, double tolerance = 1e-6);

std::string deviation_report_csv(const std::vector<DeviationRow>& rows,
                                 const std::string& stamp);

} // namespace wb
