#include "wb/correlation.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "wb/aes.hpp"
#include "wb/csvio.hpp"
#include "wb/errors.hpp"

namespace wb {
namespace {

double clamp_unit(double v) { return v < -1.0 ? -1.0 : (v > 1.0 ? 1.0 : v); }

// Shared correlation kernel over pre-centered vectors: numerator dot
// product and sqrt of the product of the squared-deviation sums, in a
// fixed accumulation order so every caller gets identical doubles.
double centered_corr(const double* dx, const double* dy, std::size_t n, double sxx, double syy) {
    double sxy = 0.0;
    for (std::size_t i = 0; i < n; ++i) sxy += dx[i] * dy[i];
    double denom = std::sqrt(sxx * syy);
    if (denom == 0.0) return 0.0;
    return clamp_unit(sxy / denom);
}

} // namespace

double pearson(const std::vector<double>& x, const std::vector<double>& y) {
    if (x.size() != y.size()) throw ConfigError("pearson: length mismatch");
    if (x.size() < 2) throw ConfigError("pearson: need at least 2 points");
    const std::size_t n = x.size();

    // A constant input has no defined correlation: report exactly 0
    // rather than dividing by a rounding-level deviation sum.
    bool x_const = std::all_of(x.begin(), x.end(), [&](double v) { return v == x[0]; });
    bool y_const = std::all_of(y.begin(), y.end(), [&](double v) { return v == y[0]; });
    if (x_const || y_const) return 0.0;

    double mx = std::accumulate(x.begin(), x.end(), 0.0) / double(n);
    double my = std::accumulate(y.begin(), y.end(), 0.0) / double(n);
    std::vector<double> dx(n), dy(n);
    double sxx = 0.0, syy = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
        dx[i] = x[i] - mx;
        dy[i] = y[i] - my;
        sxx += dx[i] * dx[i];
        syy += dy[i] * dy[i];
    }
    return centered_corr(dx.data(), dy.data(), n, sxx, syy);
}

std::vector<std::uint8_t> hypothesis_matrix(const std::vector<std::uint8_t>& plaintexts) {
    if (plaintexts.empty()) throw ConfigError("hypothesis_matrix: empty plaintext list");
    const std::size_t n = plaintexts.size();
    std::vector<std::uint8_t> m(256 * n);
    for (int g = 0; g < 256; ++g)
        for (std::size_t i = 0; i < n; ++i)
            m[std::size_t(g) * n + i] =
                std::uint8_t(hamming_weight(aes::sbox(std::uint8_t(plaintexts[i] ^ g))));
    return m;
}

CorrelationMatrix cpa_attack(const TraceSet& ts) {
    if (ts.n_traces < 2) throw ConfigError("cpa_attack: need at least 2 traces");
    const std::size_t n = std::size_t(ts.n_traces);
    const std::size_t n_samples = std::size_t(ts.n_samples);
    const auto hyp = hypothesis_matrix(ts.plaintexts);

    // Center hypothesis rows; flag constant rows (zero by definition).
    std::vector<double> hc(256 * n);
    std::vector<double> hss(256);
    std::vector<char> h_const(256);
    for (int g = 0; g < 256; ++g) {
        const std::uint8_t* row = &hyp[std::size_t(g) * n];
        bool is_const = true;
        for (std::size_t i = 1; i < n && is_const; ++i) is_const = row[i] == row[0];
        h_const[std::size_t(g)] = char(is_const);
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) mean += double(row[i]);
        mean /= double(n);
        double ss = 0.0;
        double* out = &hc[std::size_t(g) * n];
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = double(row[i]) - mean;
            ss += out[i] * out[i];
        }
        hss[std::size_t(g)] = ss;
    }

    // Center trace columns (transposed for contiguous access).
    std::vector<double> tc(n_samples * n);
    std::vector<double> tss(n_samples);
    std::vector<char> t_const(n_samples);
    for (std::size_t s = 0; s < n_samples; ++s) {
        const double first = ts.samples[s];
        bool is_const = true;
        double mean = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
            const double v = ts.samples[i * n_samples + s];
            if (v != first) is_const = false;
            mean += v;
        }
        t_const[s] = char(is_const);
        mean /= double(n);
        double ss = 0.0;
        double* out = &tc[s * n];
        for (std::size_t i = 0; i < n; ++i) {
            out[i] = ts.samples[i * n_samples + s] - mean;
            ss += out[i] * out[i];
        }
        tss[s] = ss;
    }

    CorrelationMatrix cm;
    cm.n_samples = ts.n_samples;
    cm.values.assign(256 * n_samples, 0.0);
    for (int g = 0; g < 256; ++g) {
        if (h_const[std::size_t(g)]) continue;
        const double* dx = &hc[std::size_t(g) * n];
        double* out = &cm.values[std::size_t(g) * n_samples];
        for (std::size_t s = 0; s < n_samples; ++s) {
            if (t_const[s]) continue;
            out[s] = centered_corr(dx, &tc[s * n], n, hss[std::size_t(g)], tss[s]);
        }
    }
    return cm;
}

KeyRanking rank_keys(const CorrelationMatrix& cm, std::optional<std::uint8_t> true_key) {
    KeyRanking kr;
    kr.true_key = true_key;
    for (int g = 0; g < 256; ++g) {
        double peak = 0.0;
        const double* row = &cm.values[std::size_t(g) * std::size_t(cm.n_samples)];
        for (int s = 0; s < cm.n_samples; ++s) peak = std::max(peak, std::abs(row[s]));
        kr.peak[std::size_t(g)] = peak;
    }
    std::iota(kr.ranking.begin(), kr.ranking.end(), 0);
    std::stable_sort(kr.ranking.begin(), kr.ranking.end(), [&](int a, int b) {
        if (kr.peak[std::size_t(a)] != kr.peak[std::size_t(b)])
            return kr.peak[std::size_t(a)] > kr.peak[std::size_t(b)];
        return a < b; // ties break toward the smaller guess
    });
    kr.recovered_key = kr.ranking[0];
    kr.margin = kr.peak[std::size_t(kr.ranking[0])] - kr.peak[std::size_t(kr.ranking[1])];
    double mean = std::accumulate(kr.peak.begin(), kr.peak.end(), 0.0) / 256.0;
    double var = 0.0;
    for (double p : kr.peak) var += (p - mean) * (p - mean);
    kr.dispersion = std::sqrt(var / 256.0);
    kr.success = true_key.has_value() && kr.recovered_key == int(*true_key);
    return kr;
}

std::string attack_report_csv(const std::vector<ExperimentResult>& results,
                              const std::string& stamp) {
    std::string out = stamp + "\n";
    out += "tech,style,key_byte_index,recovered,true,peak,margin,dispersion,success\n";
    for (const auto& r : results) {
        const auto& kr = r.ranking;
        std::uint8_t rec = std::uint8_t(kr.recovered_key);
        out += tech_data_name(r.tech) + ',' + style_name(r.style) + ',' +
               std::to_string(r.key_byte_index) + ',' + to_hex(&rec, 1) + ',';
        if (kr.true_key) {
            std::uint8_t t = *kr.true_key;
            out += to_hex(&t, 1);
        }
        out += ',' + fmt_double(kr.peak[std::size_t(kr.ranking[0])]) + ',' +
               fmt_double(kr.margin) + ',' + fmt_double(kr.dispersion) + ',' +
               (kr.success ? "true" : "false") + '\n';
    }
    return out;
}

std::string correlation_dump_csv(const CorrelationMatrix& cm, const std::string& stamp) {
    std::string out = stamp + "\n";
    out += "guess";
    for (int s = 0; s < cm.n_samples; ++s) out += ",s" + std::to_string(s);
    out += '\n';
    for (int g = 0; g < 256; ++g) {
        out += std::to_string(g);
        for (int s = 0; s < cm.n_samples; ++s) {
            out += ',';
            out += fmt_double(cm.at(g, s));
        }
        out += '\n';
    }
    return out;
}

} // namespace wb
