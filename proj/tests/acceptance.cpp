// Acceptance suite: end-to-end checks of the library and CLI against the
// published tables, the brute-force oracle, and the limit diagnostics.
// Prints one PASS/FAIL line per criterion; exits nonzero if any fail.
//
// Usage: acceptance <path-to-cli> <fixtures-dir>

#include <sys/wait.h>

#include <chrono>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "qderange/qderange.hpp"

namespace {

using namespace qderange;
using Clock = std::chrono::steady_clock;

int g_failures = 0;

void report(const std::string& name, bool ok, const std::string& detail = "") {
    std::cout << (ok ? "PASS " : "FAIL ") << name;
    if (!detail.empty()) std::cout << "  (" << detail << ")";
    std::cout << "\n";
    if (!ok) ++g_failures;
}

double seconds_since(Clock::time_point start) {
    return std::chrono::duration<double>(Clock::now() - start).count();
}

std::string run_cli(const std::string& cli, const std::string& args, int& exit_code) {
    const std::string cmd = cli + " " + args + " 2>/dev/null";
    FILE* pipe = popen(cmd.c_str(), "r");
    if (!pipe) {
        exit_code = -1;
        return "";
    }
    std::string out;
    char buf[4096];
    std::size_t got;
    while ((got = fread(buf, 1, sizeof buf, pipe)) > 0) out.append(buf, got);
    const int status = pclose(pipe);
    exit_code = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
    return out;
}

std::string slurp(const std::string& path) {
    std::ifstream is(path, std::ios::binary);
    std::ostringstream ss;
    ss << is.rdbuf();
    return ss.str();
}

// 1. byte-exact reproduction of Tables 1 and 2 through the CLI
void criterion_table_reproduction(const std::string& cli, const std::string& fixtures) {
    const auto start = Clock::now();
    int rc_a = 0, rc_b = 0;
    const std::string got_a = run_cli(cli, "table --family A --n-max 6 --format csv", rc_a);
    const std::string got_b = run_cli(cli, "table --family B --n-max 4 --format csv", rc_b);
    const double elapsed = seconds_since(start);
    const bool ok = rc_a == 0 && rc_b == 0 &&
                    got_a == slurp(fixtures + "/table_A_6.csv") &&
                    got_b == slurp(fixtures + "/table_B_4.csv") && elapsed < 1.0;
    std::ostringstream detail;
    detail << "byte-exact vs fixtures, " << elapsed << " s";
    report("criterion-1 table-reproduction", ok, detail.str());
}

// 2. exhaustive enumeration equals the closed forms (single-threaded)
void criterion_oracle_equivalence() {
    const auto start = Clock::now();
    bool ok = true;
    for (unsigned long n = 2; n <= 8 && ok; ++n)
        ok = enumerate_derangements_A(n, 1).to_poly() == d_poly_A(n);
    for (unsigned long n = 1; n <= 6 && ok; ++n)
        ok = enumerate_derangements_B(n, 1).to_poly() == d_poly_B(n);
    const double elapsed = seconds_since(start);
    std::ostringstream detail;
    detail << "A up to 8, B up to 6, " << elapsed << " s";
    report("criterion-2 oracle-equivalence", ok && elapsed < 30.0, detail.str());
}

// 3. the four count formulas agree and match the paper's listed values
void criterion_count_consistency() {
    bool ok = true;
    std::string detail;
    try {
        for (unsigned long n = 0; n <= 40; ++n) (void)derangement_count_A(n);
        for (unsigned long n = 0; n <= 25; ++n) (void)derangement_count_B(n);
    } catch (const std::exception& e) {
        ok = false;
        detail = e.what();
    }
    ok = ok && derangement_count_A(4) == Integer(9) && derangement_count_A(5) == Integer(44);
    const long listed_b[] = {1, 5, 29, 233, 2329, 27949};
    for (unsigned long n = 1; n <= 6; ++n)
        ok = ok && derangement_count_B(n) == Integer(listed_b[n - 1]);
    report("criterion-3 count-consistency", ok, detail.empty() ? "A<=40, B<=25" : detail);
}

// 4. exact moment identities, spot values, and proof-step identities
void criterion_moment_identities() {
    bool ok = true;
    for (unsigned long n = 2; n <= 30 && ok; ++n)
        ok = expectation_A(n) == mean_from_poly(d_poly_A(n)) &&
             variance_A(n) == variance_from_poly(d_poly_A(n)) &&
             expectation_A_binomial_form(n) == expectation_A(n);
    for (unsigned long n = 1; n <= 18 && ok; ++n)
        ok = expectation_B(n) == mean_from_poly(d_poly_B(n)) &&
             variance_B(n) == variance_from_poly(d_poly_B(n));
    ok = ok && expectation_A(4) == Rational(10, 3) && variance_A(4) == Rational(20, 9) &&
         expectation_B(2) == Rational(12, 5) && variance_B(2) == Rational(26, 25);
    for (unsigned long n = 2; n <= 30 && ok; ++n) ok = d_prime_identity_holds(n);
    for (unsigned long n = 3; n <= 30 && ok; ++n) ok = d_double_prime_identity_holds(n);
    for (unsigned long n = 2; n <= 6 && ok; ++n)
        for (unsigned long k = 1; k < n && ok; ++k) ok = c2_expansion_identity_holds(n, k);
    report("criterion-4 moment-identities", ok, "A 2..30, B 1..18, proof steps, c_2");
}

// 5. asymptotic corollaries within 1e-6 beyond the stated sizes
void criterion_asymptotic_corollaries() {
    const Rational bound(1, 1000000);
    bool ok = true;
    for (unsigned long n = 12; n <= 40 && ok; ++n) {
        const auto [ea, va] = asymptotic_moments(Family::A, n);
        ok = (expectation_A(n) - ea).abs() < bound && (variance_A(n) - va).abs() < bound;
    }
    for (unsigned long n = 10; n <= 25 && ok; ++n) {
        const auto [eb, vb] = asymptotic_moments(Family::B, n);
        ok = (expectation_B(n) - eb).abs() < bound && (variance_B(n) - vb).abs() < bound;
    }
    report("criterion-5 asymptotic-corollaries", ok, "A n>=12, B n>=10, gaps < 1e-6");
}

// 6. Kolmogorov-Smirnov distance to the normal law strictly decreases
void criterion_normality() {
    bool ok = true;
    std::ostringstream detail;
    Real last_a;
    {
        Real prev;
        bool first = true;
        for (unsigned long n : {5ul, 10ul, 20ul, 40ul}) {
            const Real ks = ks_to_normal(standardize(Family::A, n, 60));
            detail << "A" << n << "=" << ks.to_string(4) << " ";
            if (!first) ok = ok && ks < prev;
            prev = ks;
            first = false;
        }
        last_a = prev;
    }
    {
        Real prev;
        bool first = true;
        for (unsigned long n : {4ul, 8ul, 16ul, 24ul}) {
            const Real ks = ks_to_normal(standardize(Family::B, n, 60));
            detail << "B" << n << "=" << ks.to_string(4) << " ";
            if (!first) ok = ok && ks < prev;
            prev = ks;
            first = false;
        }
    }
    ok = ok && last_a < Real::from_rational(Rational(1, 20), 60);  // KS(A,40) < 0.05
    report("criterion-6 normality-ks", ok, detail.str());
}

// 7. standardized MGF converges to e^{1/2} at t = 1 and is exactly 1 at t = 0
void criterion_mgf_convergence() {
    bool ok = mgf_standardized(Family::A, 10, Real::zero(60), 60) == Real::one(60);
    const Real target = Real::from_rational(Rational(1, 2), 60).exp();
    for (Family fam : {Family::A, Family::B}) {
        Real prev;
        bool first = true;
        for (unsigned long n : fam == Family::A ? std::vector<unsigned long>{10, 20, 40}
                                                : std::vector<unsigned long>{8, 16, 24}) {
            const Real gap = (mgf_standardized(fam, n, Real::one(60), 60) - target).abs();
            if (!first) ok = ok && gap < prev;
            prev = gap;
            first = false;
        }
    }
    report("criterion-7 mgf-convergence", ok, "|M(1) - sqrt(e)| decreasing, M(0) = 1");
}

// 8. the lemma validators behave as the limits predict
void criterion_lemma_validators() {
    bool ok = true;
    const Real one = Real::one(60);
    // Tannery partial sums at x = -1, t = 1
    const Real target_a = (-one).exp();
    const Real target_b = Real::from_rational(Rational(-1, 2), 60).exp();
    {
        Real prev;
        bool first = true;
        for (unsigned long n : {10ul, 20ul, 40ul}) {
            const Real gap = (tannery_partial_sum(Family::A, n, -one, one, 60) - target_a).abs();
            if (!first) ok = ok && gap < prev;
            prev = gap;
            first = false;
        }
    }
    {
        Real prev;
        bool first = true;
        for (unsigned long n : {8ul, 16ul, 32ul}) {
            const Real gap = (tannery_partial_sum(Family::B, n, -one, one, 60) - target_b).abs();
            if (!first) ok = ok && gap < prev;
            prev = gap;
            first = false;
        }
    }
    // Bernoulli tails shrink along the same doubling grids
    for (Family fam : {Family::A, Family::B}) {
        Real prev;
        bool first = true;
        for (unsigned long n : fam == Family::A ? std::vector<unsigned long>{10, 20, 40}
                                                : std::vector<unsigned long>{8, 16, 32}) {
            const Real mag = bernoulli_tail(fam, n, one, 20, 60).abs();
            if (!first) ok = ok && mag < prev;
            prev = mag;
            first = false;
        }
    }
    // MGF factorization discrepancy at the pinned point
    const Real x = Real::from_rational(Rational(1, 10), 60);
    const Real tol = Real::from_long(10, 60).pow(-20);
    ok = ok && mgf_bernoulli_identity_check(Family::A, 6, x, 15, 60) < tol &&
         mgf_bernoulli_identity_check(Family::B, 6, x, 15, 60) < tol;
    // normalized power sums near 12
    const Real twelve = Real::from_long(12, 60);
    const Real half = Real::from_rational(Rational(1, 2), 60);
    ok = ok && (power_sum_ratio(Family::A, 100, 60) - twelve).abs() < half &&
         (power_sum_ratio(Family::B, 100, 60) - twelve).abs() < half;
    report("criterion-8 lemma-validators", ok,
           "Tannery, Bernoulli tail, MGF factorization, power-sum limit");
}

// 9. prose spot checks from the introduction
void criterion_prose_spot_checks() {
    bool ok = fmaj(SignedPerm({3, 5, -1, 2, -6, -7, 4})) == 25;

    // the five listed B_2-derangements, and nothing else
    std::vector<std::vector<int>> listed = {{-1, -2}, {2, 1}, {2, -1}, {-2, 1}, {-2, -1}};
    CoefficientHistogram::Map hist;
    for (const auto& entries : listed) hist[fmaj(SignedPerm(entries))] += Integer(1);
    ok = ok && CoefficientHistogram(std::move(hist)) == enumerate_derangements_B(2, 1);
    report("criterion-9 prose-spot-checks", ok, "fmaj example = 25, B_2 derangement set");
}

}  // namespace

int main(int argc, char** argv) {
    if (argc < 3) {
        std::cerr << "usage: acceptance <path-to-cli> <fixtures-dir>\n";
        return 2;
    }
    const std::string cli = argv[1];
    const std::string fixtures = argv[2];
    const auto start = Clock::now();

    criterion_table_reproduction(cli, fixtures);
    criterion_oracle_equivalence();
    criterion_count_consistency();
    criterion_moment_identities();
    criterion_asymptotic_corollaries();
    criterion_normality();
    criterion_mgf_convergence();
    criterion_lemma_validators();
    criterion_prose_spot_checks();

    std::cout << "total " << seconds_since(start) << " s, " << g_failures << " failure(s)\n";
    return g_failures == 0 ? 0 : 1;
}
