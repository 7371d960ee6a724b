// Command-line interface: tables of q-derangement coefficients, exact and
// asymptotic moments, the full identity battery, and the normality /
// limit-lemma diagnostics.
//
// Exit codes: 0 success, 1 failed identity, 2 usage error, 3 I/O error.

#include <cstdlib>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "qderange/qderange.hpp"

namespace {

using namespace qderange;

constexpr long kMinPrecision = 20;

struct CliConfig {
    std::string family = "A";
    unsigned long n = 0;
    unsigned long n_max = 6;
    std::vector<unsigned long> n_list;
    long precision = Real::default_digits;
    double t = 1.0;
    double x = -1.0;
    unsigned long i_max = 20;
    std::string format;
    std::string out;
    unsigned workers = 0;  // 0: use available cores
    unsigned long oracle_max = 0;
};

unsigned resolve_workers(unsigned requested) {
    if (requested > 0) return requested;
    const unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? hw : 1;
}

// QMAJ_PRECISION provides the default; an explicit --precision wins.
void apply_env_precision(const CLI::App* cmd, CliConfig& cfg) {
    if (cmd->count("--precision") > 0) return;
    const char* env = std::getenv("QMAJ_PRECISION");
    if (env == nullptr || *env == '\0') return;
    char* end = nullptr;
    const long value = std::strtol(env, &end, 10);
    if (end == nullptr || *end != '\0' || value < kMinPrecision)
        throw std::invalid_argument("QMAJ_PRECISION must be an integer >= " +
                                    std::to_string(kMinPrecision) + ", got \"" +
                                    std::string(env) + "\"");
    cfg.precision = value;
}

// Writes through `sink` to --out when given, stdout otherwise; I/O failures
// surface as io_error with the offending path.
int write_output(const std::string& out, const std::function<void(std::ostream&)>& sink) {
    if (out.empty()) {
        sink(std::cout);
        std::cout.flush();
        return 0;
    }
    std::ofstream os(out, std::ios::binary);
    if (!os) throw io_error("cannot open for writing: " + out);
    sink(os);
    os.flush();
    if (!os) throw io_error("write failed: " + out);
    return 0;
}

int run_table(const CliConfig& cfg) {
    const Family family = family_from_string(cfg.family);
    const ExportFormat format = export_format_from_string(cfg.format.empty() ? "csv" : cfg.format);
    return write_output(cfg.out,
                        [&](std::ostream& os) { export_table(family, cfg.n_max, format, os); });
}

int run_moments(const CliConfig& cfg) {
    const Family family = family_from_string(cfg.family);
    if ((family == Family::A && cfg.n < 2) || (family == Family::B && cfg.n < 1)) {
        std::cerr << "moments: no distribution for family " << family_name(family)
                  << " at n=" << cfg.n << "\n";
        return 2;
    }
    const MomentSummary s = summarize(family, cfg.n, cfg.precision);
    if (s.degenerate) {
        std::cerr << "moments: degenerate distribution (variance = 0) at family "
                  << family_name(family) << " n=" << cfg.n << "\n";
        return 2;
    }
    std::cout << "family=" << family_name(family) << " n=" << cfg.n << "\n"
              << "mean=" << s.mean << "\n"
              << "variance=" << s.variance << "\n"
              << "sigma=" << s.sigma.to_string() << "\n"
              << "mean_asymptotic=" << Real::from_rational(s.mean_asymptotic, cfg.precision) << "\n"
              << "variance_asymptotic="
              << Real::from_rational(s.variance_asymptotic, cfg.precision) << "\n";
    return 0;
}

// ---------------------------------------------------------------- verify

class CheckReporter {
public:
    void pass(const std::string& name) { std::cout << "PASS " << name << "\n"; }
    void fail(const std::string& name, const std::string& counterexample) {
        std::cout << "FAIL " << name << "\n";
        if (!counterexample.empty())
            std::cout << "  first counterexample: " << counterexample << "\n";
        ok_ = false;
    }
    void report(const std::string& name, bool ok, const std::string& counterexample) {
        if (ok)
            pass(name);
        else
            fail(name, counterexample);
    }
    bool all_passed() const { return ok_; }

private:
    bool ok_ = true;
};

void verify_counts(Family family, unsigned long n_max, CheckReporter& rep) {
    for (unsigned long n = 0; n <= n_max; ++n) {
        try {
            const Integer count =
                family == Family::A ? derangement_count_A(n) : derangement_count_B(n);
            const QPoly& p = family == Family::A ? d_poly_A(n) : d_poly_B(n);
            if (eval_rational(p, 1) != Rational(count)) {
                rep.fail("count-consistency", "d(1) != count at n=" + std::to_string(n));
                return;
            }
        } catch (const std::runtime_error& e) {
            rep.fail("count-consistency", "n=" + std::to_string(n) + ": " + e.what());
            return;
        }
    }
    rep.pass("count-consistency");
}

void verify_division_route(Family family, unsigned long n_max, CheckReporter& rep) {
    for (unsigned long n = 0; n <= n_max; ++n) {
        const bool same = family == Family::A ? d_poly_A(n) == d_poly_A_by_division(n)
                                              : d_poly_B(n) == d_poly_B_by_division(n);
        if (!same) {
            rep.fail("closed-form-vs-division-route", "n=" + std::to_string(n));
            return;
        }
    }
    rep.pass("closed-form-vs-division-route");
}

void verify_oracle(Family family, unsigned long oracle_max, unsigned workers, CheckReporter& rep) {
    for (unsigned long n = 0; n <= oracle_max; ++n) {
        const CoefficientHistogram h = family == Family::A
                                           ? enumerate_derangements_A(n, workers)
                                           : enumerate_derangements_B(n, workers);
        const QPoly& p = family == Family::A ? d_poly_A(n) : d_poly_B(n);
        if (h.to_poly() != p) {
            rep.fail("oracle-vs-closed-form", "n=" + std::to_string(n));
            return;
        }
    }
    rep.pass("oracle-vs-closed-form");
}

void verify_moments(Family family, unsigned long n_max, CheckReporter& rep) {
    const unsigned long lo = family == Family::A ? 2 : 1;
    for (unsigned long n = lo; n <= n_max; ++n) {
        const QPoly& p = family == Family::A ? d_poly_A(n) : d_poly_B(n);
        const Rational mean = family == Family::A ? expectation_A(n) : expectation_B(n);
        const Rational var = family == Family::A ? variance_A(n) : variance_B(n);
        if (mean != mean_from_poly(p) || var != variance_from_poly(p)) {
            rep.fail("moment-closed-forms", "n=" + std::to_string(n));
            return;
        }
        if (family == Family::A && expectation_A_binomial_form(n) != mean) {
            rep.fail("moment-closed-forms", "E_n printed forms differ at n=" + std::to_string(n));
            return;
        }
    }
    rep.pass("moment-closed-forms");
}

void verify_proof_steps(Family family, unsigned long n_max, CheckReporter& rep) {
    if (family == Family::A) {
        for (unsigned long n = 2; n <= n_max; ++n) {
            if (!d_prime_identity_holds(n)) {
                rep.fail("proof-step-identities", "d'(1) at n=" + std::to_string(n));
                return;
            }
            if (n >= 3 && !d_double_prime_identity_holds(n)) {
                rep.fail("proof-step-identities", "d''(1) at n=" + std::to_string(n));
                return;
            }
        }
    } else {
        for (unsigned long n = 2; n <= std::min<unsigned long>(n_max, 6); ++n)
            for (unsigned long k = 1; k < n; ++k)
                if (!c2_expansion_identity_holds(n, k)) {
                    rep.fail("proof-step-identities",
                             "c_2 expansion at n=" + std::to_string(n) + " k=" + std::to_string(k));
                    return;
                }
    }
    rep.pass("proof-step-identities");
}

void verify_ratio(Family family, unsigned long n_max, CheckReporter& rep) {
    const unsigned long lo = family == Family::A ? 2 : 1;
    for (unsigned long n = lo; n <= n_max; ++n)
        if (!count_ratio_identity_holds(family, n)) {
            rep.fail("count-ratio-identity", "n=" + std::to_string(n));
            return;
        }
    rep.pass("count-ratio-identity");
}

void verify_q_reciprocal(CheckReporter& rep) {
    const Rational points[] = {Rational(3, 2), Rational(2, 3), Rational(7, 5)};
    for (unsigned long k = 0; k <= 8; ++k)
        for (const Rational& q : points)
            if (!q_reciprocal_identity_check(k, q)) {
                rep.fail("q-reciprocal-identities",
                         "k=" + std::to_string(k) + " q=" + q.to_string());
                return;
            }
    rep.pass("q-reciprocal-identities");
}

int run_verify(const CliConfig& cfg) {
    const Family family = family_from_string(cfg.family);
    const unsigned long oracle_limit = family == Family::A ? 9 : 7;
    if (cfg.oracle_max > oracle_limit) {
        std::cerr << "verify: --oracle-max exceeds the enumeration limit ("
                  << oracle_limit << " for family " << family_name(family) << ")\n";
        return 2;
    }
    const unsigned workers = resolve_workers(cfg.workers);
    CheckReporter rep;
    verify_counts(family, cfg.n_max, rep);
    verify_division_route(family, cfg.n_max, rep);
    verify_oracle(family, cfg.oracle_max, workers, rep);
    verify_moments(family, cfg.n_max, rep);
    verify_proof_steps(family, cfg.n_max, rep);
    verify_ratio(family, cfg.n_max, rep);
    verify_q_reciprocal(rep);
    return rep.all_passed() ? 0 : 1;
}

// ---------------------------------------------------------------- normality

int run_normality(const CliConfig& cfg) {
    const Family family = family_from_string(cfg.family);
    const std::string fmt = cfg.format.empty() ? "text" : cfg.format;
    if (cfg.n_list.empty()) {
        std::cerr << "normality: --n-list must not be empty\n";
        return 2;
    }

    std::vector<Real> ks_values;
    ks_values.reserve(cfg.n_list.size());
    if (fmt == "text") {
        for (unsigned long n : cfg.n_list)
            ks_values.push_back(ks_to_normal(standardize(family, n, cfg.precision)));
    } else {
        const ExportFormat format = export_format_from_string(fmt);
        std::ostringstream data;
        nlohmann::ordered_json array = nlohmann::ordered_json::array();
        bool first = true;
        for (unsigned long n : cfg.n_list) {
            std::ostringstream block;
            export_normality(family, n, cfg.precision, format, block);
            std::string text = block.str();
            if (format == ExportFormat::csv) {
                if (!first) text.erase(0, text.find('\n') + 1);  // keep one header
                data << text;
            } else {
                array.push_back(nlohmann::ordered_json::parse(text));
            }
            first = false;
            ks_values.push_back(ks_to_normal(standardize(family, n, cfg.precision)));
        }
        if (format == ExportFormat::json) data << array.dump() << '\n';
        write_output(cfg.out, [&](std::ostream& os) { os << data.str(); });
    }

    bool decreasing = true;
    for (std::size_t i = 1; i < ks_values.size(); ++i)
        if (!(ks_values[i] < ks_values[i - 1])) decreasing = false;

    // KS summary: stdout in text mode or when data went to a file, stderr
    // when the data stream already occupies stdout.
    std::ostream& summary = (fmt == "text" || !cfg.out.empty()) ? std::cout : std::cerr;
    for (std::size_t i = 0; i < cfg.n_list.size(); ++i)
        summary << "family=" << family_name(family) << " n=" << cfg.n_list[i]
                << " ks=" << ks_values[i].to_string() << "\n";
    if (cfg.n_list.size() > 1)
        summary << "ks_decreasing=" << (decreasing ? "true" : "false") << "\n";
    return 0;
}

// ---------------------------------------------------------------- limits

int run_limits(const CliConfig& cfg) {
    const Family family = family_from_string(cfg.family);
    if (cfg.n_list.empty()) {
        std::cerr << "limits: --n-list must not be empty\n";
        return 2;
    }
    if (cfg.x < -1.0 || cfg.x > 1.0) {
        std::cerr << "limits: --x must satisfy |x| <= 1\n";
        return 2;
    }
    const long P = cfg.precision;
    const Real t = Real::from_double(cfg.t, P);
    const Real x = Real::from_double(cfg.x, P);
    const Real mgf_target = (t * t / 2).exp();
    const Real tannery_target = family == Family::A ? x.exp() : (x / 2).exp();

    std::cout << "family=" << family_name(family) << " t=" << cfg.t << " x=" << cfg.x
              << " imax=" << cfg.i_max << " precision=" << P << "\n";
    std::cout << "mgf_target=" << mgf_target.to_string() << " tannery_target="
              << tannery_target.to_string() << "\n";
    std::cout << "n  mgf  |mgf-target|  tannery  |tannery-target|  bernoulli_tail  "
                 "mgf_identity_discrepancy\n";
    for (unsigned long n : cfg.n_list) {
        const MomentSummary s = summarize(family, n, P);
        if (s.degenerate) {
            std::cerr << "limits: degenerate variance at n=" << n << "\n";
            return 2;
        }
        const Real mgf = mgf_standardized(family, n, t, P);
        const Real tan = tannery_partial_sum(family, n, x, t, P);
        const Real tail = bernoulli_tail(family, n, t, cfg.i_max, P);
        // the factorization identity is checked at the point the limit proof
        // uses it, x_n = t / sigma_n
        const Real ident = mgf_bernoulli_identity_check(family, n, t / s.sigma, cfg.i_max, P);
        std::cout << n << "  " << mgf.to_string() << "  " << (mgf - mgf_target).abs().to_string(6)
                  << "  " << tan.to_string() << "  " << (tan - tannery_target).abs().to_string(6)
                  << "  " << tail.to_string(6) << "  " << ident.to_string(6) << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact q-derangement polynomials of types A and B with "
                 "asymptotic-normality diagnostics"};
    app.require_subcommand(1);
    CliConfig cfg;

    auto add_family = [&](CLI::App* cmd) {
        cmd->add_option("--family", cfg.family, "family: A or B")
            ->required()
            ->check(CLI::IsMember({"A", "B", "a", "b"}));
    };
    auto add_precision = [&](CLI::App* cmd) {
        cmd->add_option("--precision", cfg.precision,
                        "working precision in decimal digits (env QMAJ_PRECISION)")
            ->check(CLI::Range(kMinPrecision, 100000L))
            ->capture_default_str();
    };

    CLI::App* table = app.add_subcommand("table", "emit coefficient tables of d_n(q)");
    add_family(table);
    table->add_option("--n-max", cfg.n_max, "largest n to include")->required();
    table->add_option("--format", cfg.format, "csv or json (default csv)")
        ->check(CLI::IsMember({"csv", "json"}));
    table->add_option("--out", cfg.out, "output path (default stdout)");

    CLI::App* moments = app.add_subcommand("moments", "exact and asymptotic moments");
    add_family(moments);
    moments->add_option("--n", cfg.n, "size n")->required();
    add_precision(moments);

    CLI::App* verify = app.add_subcommand("verify", "run the exact identity battery");
    add_family(verify);
    verify->add_option("--n-max", cfg.n_max, "identity range")->capture_default_str();
    verify->add_option("--oracle-max", cfg.oracle_max,
                       "largest n for brute-force enumeration (A <= 9, B <= 7)");
    verify->add_option("--workers", cfg.workers, "enumeration workers (default: cores)");

    CLI::App* normality = app.add_subcommand("normality", "KS distance to the standard normal");
    add_family(normality);
    normality->add_option("--n-list", cfg.n_list, "comma-separated sizes")
        ->required()
        ->delimiter(',');
    add_precision(normality);
    normality->add_option("--format", cfg.format, "text, csv or json (default text)")
        ->check(CLI::IsMember({"text", "csv", "json"}));
    normality->add_option("--out", cfg.out, "output path for csv/json data");

    CLI::App* limits = app.add_subcommand("limits", "limit-lemma convergence report");
    add_family(limits);
    limits->add_option("--n-list", cfg.n_list, "comma-separated sizes")->required()->delimiter(',');
    limits->add_option("--t", cfg.t, "MGF argument")->capture_default_str();
    limits->add_option("--x", cfg.x, "Tannery argument, |x| <= 1")->capture_default_str();
    limits->add_option("--imax", cfg.i_max, "Bernoulli series truncation")->capture_default_str();
    add_precision(limits);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand(table)) return run_table(cfg);
        if (app.got_subcommand(moments)) {
            apply_env_precision(moments, cfg);
            return run_moments(cfg);
        }
        if (app.got_subcommand(verify)) return run_verify(cfg);
        if (app.got_subcommand(normality)) {
            apply_env_precision(normality, cfg);
            return run_normality(cfg);
        }
        apply_env_precision(limits, cfg);
        return run_limits(cfg);
    } catch (const io_error& e) {
        std::cerr << "I/O error: " << e.what() << "\n";
        return 3;
    } catch (const std::domain_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::length_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "internal consistency failure: " << e.what() << "\n";
        return 1;
    }
}
