#include <chrono>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include <leafdens/closed_forms.hpp>
#include <leafdens/counting.hpp>
#include <leafdens/extremal.hpp>
#include <leafdens/simplex.hpp>

using namespace leafdens;

namespace {

struct Outcome {
    bool pass = true;
    std::string report;
};

class Report {
public:
    void fail(const std::string& msg) {
        pass_ = false;
        out_ << "FAIL " << msg << '\n';
    }
    void check(bool ok, const std::string& msg) {
        if (!ok) fail(msg);
    }
    std::ostringstream& out() { return out_; }
    Outcome done() { return {pass_, out_.str()}; }

private:
    bool pass_ = true;
    std::ostringstream out_;
};

std::string str(const ExactRatio& v) { return v.get_str(); }

Outcome brute_force_agreement() {
    Report rep;
    std::vector<Tree> patterns;
    for (std::uint64_t k = 1; k <= 5; ++k)
        for (const auto& p : enumerate_trees(k, static_cast<unsigned>(std::max<std::uint64_t>(k, 2)), false))
            patterns.push_back(p);
    CountingEngine engine;
    for (unsigned d : {2u, 3u}) {
        TreeEnumerator e(d, false);
        std::uint64_t trees = 0, pairs = 0;
        for (std::uint64_t n = 1; n <= 9; ++n)
            for (const auto& t : e.trees(n)) {
                ++trees;
                for (const auto& p : patterns) {
                    ++pairs;
                    BigCount fast = engine.count(p, t), slow = count_copies_brute(p, t);
                    if (fast != slow)
                        rep.fail(p.code() + " in " + t.code() + ": recursion " + fast.get_str() + ", brute " +
                                 slow.get_str());
                }
            }
        rep.out() << "d=" << d << " trees=" << trees << " patterns=" << patterns.size() << " pairs=" << pairs << '\n';
    }
    return rep.done();
}

Outcome closed_form_agreement() {
    Report rep;
    CountingEngine engine;
    std::uint64_t checked = 0;
    for (unsigned d = 2; d <= 4; ++d)
        for (unsigned h = 1; h <= 3; ++h) {
            const Tree t = make_complete(d, h);
            for (unsigned r = 2; r <= d; ++r) {
                for (unsigned k = r; k <= 9; k += r - 1) {
                    BigCount formula = caterpillar_copies_complete(r, k, d, h);
                    BigCount counted = engine.count(make_caterpillar(r, k), t);
                    ++checked;
                    rep.out() << "F^" << r << "_" << k << " in CD^" << d << "_" << h << ": " << formula.get_str()
                              << '\n';
                    rep.check(formula == counted, "caterpillar mismatch, counted " + counted.get_str());
                }
                BigCount stars = star_copies(r, d, h);
                ++checked;
                rep.out() << "star " << r << " in CD^" << d << "_" << h << ": " << stars.get_str() << '\n';
                rep.check(stars == engine.count(make_complete(r, 1), t), "star mismatch");
            }
        }
    rep.out() << "checked=" << checked << '\n';
    return rep.done();
}

Outcome limits_and_convergence() {
    Report rep;
    rep.out() << "liminf(2,3)=" << str(liminf_density(2, 3)) << '\n';
    rep.out() << "liminf(3,3)=" << str(liminf_density(3, 3)) << '\n';
    rep.check(liminf_density(2, 3) == 1, "liminf(2,3) != 1");
    rep.check(liminf_density(3, 3) == ExactRatio(3, 4), "liminf(3,3) != 3/4");
    const ExactRatio limit(3, 4);
    const Tree f = make_caterpillar(2, 3);
    ExactRatio prev_err = -1;
    for (unsigned h = 3; h <= 6; ++h) {
        const Tree t = make_complete(3, h);
        ExactRatio dens = density(f, t);
        ExactRatio err = abs(dens - limit);
        rep.out() << "h=" << h << " gamma=" << str(dens) << " (" << to_decimal(dens) << ") error=" << to_decimal(err)
                  << '\n';
        if (prev_err >= 0) rep.check(err < prev_err, "error did not decrease at h=" + std::to_string(h));
        if (h == 6) rep.check(err < ExactRatio(1, 100), "h=6 error not within 0.01");
        prev_err = err;
    }
    return rep.done();
}

Outcome lower_bound_on_strict_trees() {
    Report rep;
    for (unsigned d : {2u, 3u}) {
        TreeEnumerator e(d, true);
        std::uint64_t trees = 0;
        for (std::uint64_t n = 1; n <= 13; n += d - 1)
            for (const auto& t : e.trees(n)) {
                ++trees;
                CountVector c = caterpillar_counts(t, 5);
                for (unsigned k = 3; k <= 5; ++k)
                    if (ExactRatio(c[k]) < bk_lower_bound(d, k, n))
                        rep.fail("d=" + std::to_string(d) + " k=" + std::to_string(k) + " " + t.code());
            }
        rep.out() << "d=" << d << " strict trees=" << trees << '\n';
    }
    return rep.done();
}

Outcome monotone_binary_k4() {
    Report rep;
    TreeEnumerator any(2, false);
    const ExactRatio bound(4, 7);
    ExactRatio prev = -1;
    for (std::uint64_t n = 5; n <= 14; ++n) {
        SearchRow row = min_density_row(n, 4, any, nullptr);
        rep.out() << "n=" << n << " min_count=" << row.min_count.get_str() << " density=" << str(row.min_density)
                  << " argmin=" << row.argmin.front() << '\n';
        rep.check(row.min_density >= prev, "decrease at n=" + std::to_string(n));
        rep.check(row.min_density <= bound, "above 4/7 at n=" + std::to_string(n));
        prev = row.min_density;
    }
    return rep.done();
}

Outcome even_conjecture() {
    Report rep;
    TreeEnumerator any(2, false);
    for (unsigned k : {4u, 5u}) {
        ParetoSearch search(k, 2);
        for (std::uint64_t n = k; n <= 16; ++n) {
            SearchRow row = min_density_row(n, k, any, nullptr);
            auto [count, witness] = search.minimum(n);
            rep.check(BigCount(std::to_string(count)) == row.min_count,
                      "pareto/exhaustive mismatch k=" + std::to_string(k) + " n=" + std::to_string(n));
        }
        rep.out() << "k=" << k << " pareto matches exhaustive for n<=16\n";
    }
    for (unsigned k : {4u, 5u}) {
        SearchReport r = verify_even_conjecture(k, 100);
        for (const auto& row : r.rows) {
            rep.out() << "k=" << k << " n=" << row.n << " min=" << row.min_count.get_str()
                      << " even=" << row.even_count->get_str() << '\n';
            rep.check(*row.verdict, "even tree not minimal at k=" + std::to_string(k) + " n=" + std::to_string(row.n));
        }
        rep.check(r.all_checks_pass(), "conjecture check failed for k=" + std::to_string(k));
    }
    return rep.done();
}

Outcome simplex_checks() {
    Report rep;
    for (unsigned d = 2; d <= 4; ++d)
        for (unsigned k = 3; k <= 6; ++k) {
            std::mt19937_64 rng(1000 * d + k);
            const ExactRatio upper(1, k), lower = F_uniform_value(d, k);
            ExactRatio lo, hi;
            for (int i = 0; i < 10000; ++i) {
                ExactRatio v = eval_F(d, k, random_rational_point(d, rng));
                if (i == 0 || v < lo) lo = v;
                if (i == 0 || v > hi) hi = v;
            }
            rep.out() << "d=" << d << " k=" << k << " sample min=" << to_decimal(lo) << " max=" << to_decimal(hi)
                      << '\n';
            rep.check(lo >= lower && hi <= upper,
                      "bounds violated at d=" + std::to_string(d) + " k=" + std::to_string(k));
        }
    for (auto [d, k] : {std::pair{2u, 4u}, {3u, 3u}, {3u, 4u}, {4u, 5u}}) {
        MinimizeResult r = minimize_F(d, k);
        const double target = F_uniform_value(d, k).get_d();
        double worst = 0;
        for (const auto& x : r.point) worst = std::max(worst, std::abs(x.convert_to<double>() - 1.0 / d));
        const double gap = std::abs(r.value.convert_to<double>() - target);
        rep.out() << "minimize d=" << d << " k=" << k << " coord_err<1e-6:" << (worst < 1e-6)
                  << " value_err<1e-9:" << (gap < 1e-9) << '\n';
        rep.check(worst < 1e-6 && gap < 1e-9, "minimizer off at d=" + std::to_string(d) + " k=" + std::to_string(k));
    }
    auto vals = sup_boundary_scan(3, 4, dyadic_schedule(20));
    for (std::size_t i = 0; i < vals.size(); ++i) {
        rep.out() << "eps=2^-" << i + 1 << " F=" << to_decimal(vals[i]) << '\n';
        if (i > 0) rep.check(vals[i] > vals[i - 1], "boundary values not increasing");
        rep.check(vals[i] < ExactRatio(1, 4), "boundary value reached 1/4");
    }
    rep.check(ExactRatio(1, 4) - vals.back() < ExactRatio(1, 10000), "final boundary gap not below 1e-4");
    return rep.done();
}

Outcome ternary_identity() {
    Report rep;
    TreeEnumerator e(3, false);
    const Tree star = make_complete(3, 1);
    CountingEngine engine;
    std::uint64_t trees = 0;
    for (std::uint64_t n = 1; n <= 10; ++n)
        for (const auto& t : e.trees(n)) {
            ++trees;
            if (caterpillar_counts(t, 3)[3] + engine.count(star, t) != binomial(n, 3)) rep.fail(t.code());
        }
    rep.out() << "ternary trees=" << trees << '\n';
    return rep.done();
}

struct Criterion {
    int id;
    const char* title;
    std::function<Outcome()> run;
};

const std::vector<Criterion>& criteria() {
    static const std::vector<Criterion> all = {
        {1, "recursive copy counts equal brute force (d in {2,3}, n <= 9, |D| <= 5)", brute_force_agreement},
        {2, "closed-form caterpillar and star counts equal the recursion (d <= 4, h <= 3, k <= 9)",
         closed_form_agreement},
        {3, "liminf values and convergence of gamma(F^2_3, CD^3_h) to 3/4", limits_and_convergence},
        {4, "b_k n^k - n^(k-1)/(k-1)! lower bound on strict trees (n <= 13)", lower_bound_on_strict_trees},
        {5, "binary k=4 minimum density nondecreasing and at most 4/7 (5 <= n <= 14)", monotone_binary_k4},
        {6, "even binary trees minimize F^2_k copies for k in {4,5}, n <= 100", even_conjecture},
        {7, "F_{d,k} bounds, minimizer and boundary supremum", simplex_checks},
        {8, "c(F^2_3,T) + c(CD^3_1,T) = C(n,3) for ternary trees (n <= 10)", ternary_identity},
    };
    return all;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Acceptance checks"};
    std::string report_dir = "acceptance_reports";
    app.add_option("--report-dir", report_dir, "Directory for per-criterion reports");
    CLI11_PARSE(app, argc, argv);
    std::filesystem::create_directories(report_dir);

    bool all = true;
    std::vector<std::string> first_pass;
    for (const auto& c : criteria()) {
        const auto start = std::chrono::steady_clock::now();
        Outcome o = c.run();
        const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        std::ofstream(std::filesystem::path(report_dir) / ("criterion_" + std::to_string(c.id) + ".txt"),
                      std::ios::binary)
            << o.report;
        first_pass.push_back(o.report);
        all = all && o.pass;
        std::cout << (o.pass ? "PASS" : "FAIL") << " criterion " << c.id << ": " << c.title << " [" << std::fixed
                  << std::setprecision(1) << secs << "s]" << std::endl;
        if (!o.pass) std::cout << o.report;
    }

    bool identical = true;
    for (std::size_t i = 0; i < criteria().size(); ++i) {
        Outcome again = criteria()[i].run();
        std::ifstream in(std::filesystem::path(report_dir) / ("criterion_" + std::to_string(criteria()[i].id) + ".txt"),
                         std::ios::binary);
        std::stringstream saved;
        saved << in.rdbuf();
        if (again.report != first_pass[i] || saved.str() != again.report) {
            identical = false;
            std::cout << "  criterion " << criteria()[i].id << " report differs on re-run\n";
        }
    }
    all = all && identical;
    std::cout << (identical ? "PASS" : "FAIL") << " criterion 9: re-running criteria 1-8 gives byte-identical reports"
              << std::endl;
    std::cout << (all ? "ALL PASS" : "SOME CRITERIA FAILED") << std::endl;
    return all ? 0 : 1;
}
