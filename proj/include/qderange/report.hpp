#pragma once

#include <cstddef>
#include <fstream>
#include <ostream>
#include <stdexcept>
#include <string>

#include <json.hpp>

#include "qderange/analysis.hpp"
#include "qderange/family.hpp"
#include "qderange/qseries.hpp"

namespace qderange {

struct io_error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class ExportFormat { csv, json };

inline ExportFormat export_format_from_string(const std::string& s) {
    if (s == "csv") return ExportFormat::csv;
    if (s == "json") return ExportFormat::json;
    throw std::invalid_argument("format must be csv or json, got \"" + s + "\"");
}

// Writes one row per nonzero coefficient of d_n(q) (resp. d_n^B) for
// 1 <= n <= n_max; coefficients are serialized as exact decimal strings.
// Returns the row count. CSV header: family,n,k,coefficient.
inline std::size_t export_table(Family family, unsigned long n_max, ExportFormat format,
                                std::ostream& os) {
    std::size_t rows = 0;
    if (format == ExportFormat::csv) {
        os << "family,n,k,coefficient\n";
        for (unsigned long n = 1; n <= n_max; ++n) {
            const QPoly& p = family == Family::A ? d_poly_A(n) : d_poly_B(n);
            for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
                if (p.coeffs()[k].is_zero()) continue;
                os << family_name(family) << ',' << n << ',' << k << ','
                   << p.coeffs()[k].to_string() << '\n';
                ++rows;
            }
        }
    } else {
        nlohmann::ordered_json doc;
        doc["family"] = family_name(family);
        doc["rows"] = nlohmann::ordered_json::array();
        for (unsigned long n = 1; n <= n_max; ++n) {
            const QPoly& p = family == Family::A ? d_poly_A(n) : d_poly_B(n);
            for (std::size_t k = 0; k < p.coeffs().size(); ++k) {
                if (p.coeffs()[k].is_zero()) continue;
                doc["rows"].push_back({{"n", n}, {"k", k}, {"coefficient", p.coeffs()[k].to_string()}});
                ++rows;
            }
        }
        os << doc.dump() << '\n';
    }
    return rows;
}

// Writes the standardized distribution of one family/size: one row per
// support point (x, pmf, empirical CDF, normal CDF) plus a trailer carrying
// the Kolmogorov-Smirnov distance. Real values are serialized at 20
// significant digits regardless of the working precision. Returns the number
// of support rows (the trailer excluded).
inline std::size_t export_normality(Family family, unsigned long n, long digits,
                                    ExportFormat format, std::ostream& os) {
    const StandardizedDistribution d = standardize(family, n, digits);
    const Real ks = ks_to_normal(d);
    Rational cumulative;
    if (format == ExportFormat::csv) {
        os << "family,n,x,pmf,cdf_empirical,cdf_normal\n";
        for (std::size_t i = 0; i < d.support.size(); ++i) {
            cumulative += d.probs[i];
            os << family_name(family) << ',' << n << ',' << d.support[i].to_string() << ','
               << d.probs[i].to_string() << ','
               << Real::from_rational(cumulative, digits).to_string() << ','
               << normal_cdf(d.support[i], digits).to_string() << '\n';
        }
        os << family_name(family) << ',' << n << ",ks_distance,,," << ks.to_string() << '\n';
    } else {
        nlohmann::ordered_json doc;
        doc["family"] = family_name(family);
        doc["n"] = n;
        doc["rows"] = nlohmann::ordered_json::array();
        for (std::size_t i = 0; i < d.support.size(); ++i) {
            cumulative += d.probs[i];
            doc["rows"].push_back({{"x", d.support[i].to_string()},
                                   {"pmf", d.probs[i].to_string()},
                                   {"cdf_empirical", Real::from_rational(cumulative, digits).to_string()},
                                   {"cdf_normal", normal_cdf(d.support[i], digits).to_string()}});
        }
        doc["ks_distance"] = ks.to_string();
        os << doc.dump() << '\n';
    }
    return d.support.size();
}

namespace detail {

template <typename WriteFn>
std::size_t export_to_file(const std::string& path, WriteFn write) {
    std::ofstream os(path, std::ios::binary);
    if (!os) throw io_error("cannot open for writing: " + path);
    const std::size_t rows = write(os);
    os.flush();
    if (!os) throw io_error("write failed: " + path);
    return rows;
}

}  // namespace detail

inline std::size_t export_table_file(Family family, unsigned long n_max, ExportFormat format,
                                     const std::string& path) {
    return detail::export_to_file(
        path, [&](std::ostream& os) { return export_table(family, n_max, format, os); });
}

inline std::size_t export_normality_file(Family family, unsigned long n, long digits,
                                         ExportFormat format, const std::string& path) {
    return detail::export_to_file(
        path, [&](std::ostream& os) { return export_normality(family, n, digits, format, os); });
}

}  // namespace qderange
