#include "cli.hpp"

#include <bobtail/common/parallel.hpp>
#include <bobtail/common/rng.hpp>
#include <bobtail/common/summary.hpp>
#include <bobtail/stats/gamma.hpp>
#include <bobtail/stats/mining_stats.hpp>
#include <bobtail/stats/sampling.hpp>

#include <cmath>
#include <iomanip>
#include <ostream>
#include <sstream>
#include <string>

namespace bobtail::cli {

namespace {

constexpr std::uint64_t kTrials = 200000;
// Deliberately loose: selfcheck should never flake, only catch real breakage.
constexpr double kMaxZ = 5.0;

class Reporter {
public:
    explicit Reporter(std::ostream& out) : out_(out) {}

    void check(const std::string& name, bool ok, const std::string& detail)
    {
        out_ << (ok ? "PASS " : "FAIL ") << name << ": " << detail << "\n";
        if (!ok)
            ++failures_;
    }

    void z_check(const std::string& name, double measured, double expected, double se)
    {
        const double z = se > 0.0 ? std::abs(measured - expected) / se : (measured == expected ? 0.0 : INFINITY);
        std::ostringstream os;
        os << std::setprecision(6) << "measured=" << measured << " expected=" << expected << " |z|=" << z;
        check(name, z <= kMaxZ, os.str());
    }

    int failures() const { return failures_; }

private:
    std::ostream& out_;
    int failures_ = 0;
};

} // namespace

int selfcheck(std::ostream& out, unsigned jobs, unsigned long long seed)
{
    Reporter rep(out);
    out << "# selfcheck seed=" << seed << " trials=" << kTrials << "\n";

    for (int k : {1, 3, 10, 40}) {
        const auto params = stats::MiningParams::make(k, 1.0, 1.0, 1ULL << 20);
        const double v = params.expected_min;
        struct Draw {
            double w = 0.0, v1 = 0.0, v2 = 0.0, y = 0.0;
        };
        const auto draws = run_trials(kTrials, jobs, [&](std::uint64_t t) {
            Rng rng = trial_rng(stream_seed(seed, static_cast<std::uint64_t>(k)), t);
            const auto os = stats::sample_order_stats(params, rng);
            Draw d;
            d.w = os.w_k();
            d.v1 = os.values[0];
            d.v2 = k >= 2 ? os.values[1] : 0.0;
            d.y = stats::sample_interval_counts(params, rng).y_k();
            return d;
        });
        std::vector<double> ws, ys;
        RunningStats prod;
        for (const auto& d : draws) {
            ws.push_back(d.w);
            ys.push_back(d.y);
            if (k >= 2)
                prod.add(d.v1 * d.v2);
        }
        const std::string tag = "k=" + std::to_string(k);
        const auto mw = mean_estimate(ws);
        rep.z_check("E[W_k] " + tag, mw.mean, stats::expected_w(k, v), mw.std_error);
        RunningStats wv;
        for (double w : ws)
            wv.add(w);
        rep.z_check("Var[W_k] " + tag, wv.variance(), stats::variance_w(k, v), variance_std_error(ws));
        const auto my = mean_estimate(ys);
        rep.z_check("E[Y_k] " + tag, my.mean, 1.0, my.std_error);
        if (k >= 2)
            rep.z_check("E[V_1 V_2] " + tag, prod.mean(), stats::joint_moment_vivj(1, 2, v), prod.std_error());
        if (k == 1) {
            const double ks = ks_statistic(ys, [](double x) { return x <= 0.0 ? 0.0 : 1.0 - std::exp(-x); });
            // 1.95/sqrt(n) is the 0.1% critical value.
            const double crit = 1.95 / std::sqrt(static_cast<double>(ys.size()));
            std::ostringstream os;
            os << std::setprecision(4) << "D=" << ks << " critical=" << crit;
            rep.check("Y_1 ~ Exponential(1)", ks <= crit, os.str());
        }
    }

    for (int k : {1, 2, 10, 40}) {
        for (double p : {0.5, 0.99, 0.999999}) {
            const double x = stats::gamma_quantile(p, k, 1.0);
            const double back = stats::gamma_cdf(x, k, 1.0);
            std::ostringstream os;
            os << std::setprecision(10) << "Q=" << x << " cdf(Q)=" << back;
            rep.check("gamma quantile round trip k=" + std::to_string(k) + " p=" + std::to_string(p),
                      std::abs(back - p) <= 1e-10, os.str());
        }
    }

    rep.check("variance ratio k=1", std::abs(stats::variance_ratio(1) - 1.0) < 1e-15, "closed form equals 1");

    out << (rep.failures() == 0 ? "selfcheck passed" : "selfcheck FAILED: " + std::to_string(rep.failures()))
        << "\n";
    return rep.failures();
}

} // namespace bobtail::cli
