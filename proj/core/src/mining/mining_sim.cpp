#include <bobtail/mining/mining_sim.hpp>

#include <bobtail/common/parallel.hpp>
#include <bobtail/common/rng.hpp>
#include <bobtail/protocol/rewards.hpp>
#include <bobtail/stats/mining_stats.hpp>
#include <bobtail/stats/sampling.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace bobtail::mining {

namespace {

void validate_ks(const std::vector<int>& ks)
{
    if (ks.empty())
        throw std::invalid_argument("k list is empty");
    for (int k : ks) {
        if (k < 1)
            throw std::invalid_argument("k must be at least 1");
    }
}

std::vector<double> default_grid()
{
    std::vector<double> g;
    for (int i = 0; i <= 50; ++i)
        g.push_back(0.1 * i);
    return g;
}

double empirical_cdf(const std::vector<double>& sorted, double x)
{
    const auto it = std::upper_bound(sorted.begin(), sorted.end(), x);
    return static_cast<double>(it - sorted.begin()) / static_cast<double>(sorted.size());
}

std::vector<double> sample_y(int k, double rate, const TrialConfig& run)
{
    const auto params = stats::MiningParams::make(k, rate);
    const std::uint64_t seed = stream_seed(run.seed, static_cast<std::uint64_t>(k));
    return run_trials(run.trials, run.jobs, [&](std::uint64_t t) {
        auto rng = trial_rng(seed, t);
        return stats::sample_interval_counts(params, rng).y_k();
    });
}

double sample_variance(const std::vector<double>& xs)
{
    RunningStats s;
    for (double x : xs)
        s.add(x);
    return s.variance();
}

protocol::Address miner_address(int id)
{
    return protocol::Address{protocol::Uint256(static_cast<std::uint64_t>(id) + 1)};
}

} // namespace

void validate(const TrialConfig& run)
{
    if (run.trials < 1)
        throw std::invalid_argument("trials must be at least 1");
}

std::vector<BlocktimeSummary> run_blocktime_experiment(const BlocktimeConfig& cfg)
{
    validate_ks(cfg.ks);
    validate(cfg.run);
    if (!(cfg.rate > 0.0))
        throw std::invalid_argument("rate must be positive");
    const auto grid = cfg.cdf_grid.empty() ? default_grid() : cfg.cdf_grid;

    const double reference_var = sample_variance(sample_y(1, cfg.rate, cfg.run));
    std::vector<BlocktimeSummary> out;
    for (int k : cfg.ks) {
        auto ys = sample_y(k, cfg.rate, cfg.run);
        BlocktimeSummary s;
        s.k = k;
        s.mean = mean_estimate(ys);
        s.variance = sample_variance(ys);
        s.variance_se = variance_std_error(ys);
        s.variance_ratio = s.variance / reference_var;
        s.variance_ratio_theory = stats::variance_ratio(k);
        const double rate = cfg.rate;
        std::sort(ys.begin(), ys.end());
        s.ks_exponential = ks_statistic(ys, [rate](double y) { return -std::expm1(-rate * y); });
        for (double g : grid)
            s.cdf.push_back(empirical_cdf(ys, g / cfg.rate));
        out.push_back(std::move(s));
    }
    return out;
}

ResultTable blocktime_table(const std::vector<BlocktimeSummary>& rows)
{
    ResultTable t;
    t.columns = {"k", "mean", "ci_low", "ci_high", "variance", "variance_se", "variance_ratio",
                 "variance_ratio_theory", "ks_exponential", "trials"};
    for (const auto& r : rows) {
        t.add_row({std::int64_t{r.k}, r.mean.mean, r.mean.ci_low, r.mean.ci_high, r.variance, r.variance_se,
                   r.variance_ratio, r.variance_ratio_theory, r.ks_exponential,
                   static_cast<std::int64_t>(r.mean.n)});
    }
    return t;
}

ResultTable blocktime_cdf_table(const BlocktimeConfig& cfg, const std::vector<BlocktimeSummary>& rows)
{
    const auto grid = cfg.cdf_grid.empty() ? default_grid() : cfg.cdf_grid;
    ResultTable t;
    t.columns = {"y"};
    for (const auto& r : rows)
        t.columns.push_back("cdf_k" + std::to_string(r.k));
    for (std::size_t i = 0; i < grid.size(); ++i) {
        std::vector<Cell> row{grid[i] / cfg.rate};
        for (const auto& r : rows)
            row.emplace_back(r.cdf.at(i));
        t.add_row(std::move(row));
    }
    return t;
}

std::vector<MomentsSummary> run_moments_experiment(const MomentsConfig& cfg)
{
    validate_ks(cfg.ks);
    validate(cfg.run);
    if (!(cfg.expected_min > 0.0))
        throw std::invalid_argument("expected minimum v must be positive");

    struct Outcome {
        double w = 0.0;
        double v1 = 0.0;
        double v2 = 0.0;
        double normalized = 0.0;
    };
    std::vector<MomentsSummary> out;
    for (int k : cfg.ks) {
        auto params = stats::MiningParams::make(k);
        params.expected_min = cfg.expected_min;
        params.target = stats::target_for_k(k, cfg.expected_min);
        const std::uint64_t seed = stream_seed(cfg.run.seed, static_cast<std::uint64_t>(k));
        const auto outcomes = run_trials(cfg.run.trials, cfg.run.jobs, [&](std::uint64_t t) {
            auto rng = trial_rng(seed, t);
            const auto s = stats::sample_order_stats(params, rng);
            const auto norm = s.normalized();
            Outcome o;
            o.w = s.w_k();
            o.v1 = s.values[0];
            o.v2 = k > 1 ? s.values[1] : 0.0;
            o.normalized = std::accumulate(norm.begin(), norm.end(), 0.0) / static_cast<double>(k);
            return o;
        });

        std::vector<double> ws;
        ws.reserve(outcomes.size());
        RunningStats normalized;
        CorrelationAccumulator v12;
        double sum1 = 0.0, sum2 = 0.0, sum12 = 0.0;
        for (const auto& o : outcomes) {
            ws.push_back(o.w);
            normalized.add(o.normalized);
            sum1 += o.v1;
            sum2 += o.v2;
            sum12 += o.v1 * o.v2;
        }
        const double n = static_cast<double>(outcomes.size());
        MomentsSummary s;
        s.k = k;
        s.mean_w = mean_estimate(ws);
        s.expected_mean = stats::expected_w(k, cfg.expected_min);
        s.var_w = sample_variance(ws);
        s.var_w_se = variance_std_error(ws);
        s.expected_var = stats::variance_w(k, cfg.expected_min);
        s.cov_v1v2 = k > 1 && n > 1 ? (sum12 - sum1 * sum2 / n) / (n - 1)
                                    : std::numeric_limits<double>::quiet_NaN();
        s.mean_normalized = normalized.mean();
        out.push_back(s);
    }
    return out;
}

ResultTable moments_table(const std::vector<MomentsSummary>& rows)
{
    ResultTable t;
    t.columns = {"k", "mean_w", "mean_w_se", "expected_mean", "var_w", "var_w_se", "expected_var",
                 "cov_v1v2", "mean_normalized", "trials"};
    for (const auto& r : rows) {
        t.add_row({std::int64_t{r.k}, r.mean_w.mean, r.mean_w.std_error, r.expected_mean, r.var_w, r.var_w_se,
                   r.expected_var, r.cov_v1v2, r.mean_normalized, static_cast<std::int64_t>(r.mean_w.n)});
    }
    return t;
}

RewardSummary run_reward_experiment(const RewardConfig& cfg)
{
    validate(cfg.run);
    if (cfg.k < 1)
        throw std::invalid_argument("k must be at least 1");
    if (cfg.miners.empty())
        throw std::invalid_argument("no miners");
    double total_fraction = 0.0;
    for (const auto& m : cfg.miners) {
        if (!(m.hash_fraction > 0.0 && m.hash_fraction <= 1.0))
            throw std::invalid_argument("hash fractions must lie in (0, 1]");
        total_fraction += m.hash_fraction;
    }
    if (std::abs(total_fraction - 1.0) > 1e-9)
        throw std::invalid_argument("hash fractions must sum to 1");

    const std::size_t n = cfg.miners.size();
    const auto k = static_cast<std::size_t>(cfg.k);
    struct Outcome {
        std::vector<int> proofs, bonuses;
        std::vector<protocol::Amount> totals;
        bool conserved = true;
    };
    const auto outcomes = run_trials(cfg.run.trials, cfg.run.jobs, [&](std::uint64_t t) {
        auto rng = trial_rng(cfg.run.seed, t);
        struct Proof {
            double value;
            std::size_t miner;
        };
        std::vector<Proof> pool;
        pool.reserve(n * k);
        for (std::size_t j = 0; j < n; ++j) {
            double acc = 0.0;
            const double scale = 1.0 / cfg.miners[j].hash_fraction;
            for (std::size_t i = 0; i < k; ++i) {
                acc += exponential(rng, scale);
                pool.push_back({acc, j});
            }
        }
        std::partial_sort(pool.begin(), pool.begin() + static_cast<std::ptrdiff_t>(k), pool.end(),
                          [](const Proof& a, const Proof& b) { return a.value < b.value; });
        std::vector<double> times(k);
        for (auto& x : times)
            x = uniform01(rng);

        Outcome o;
        o.proofs.assign(n, 0);
        o.bonuses.assign(n, 0);
        o.totals.assign(n, 0);
        std::vector<protocol::RewardSlot> slots(k);
        for (std::size_t i = 0; i < k; ++i) {
            const std::size_t m = pool[i].miner;
            slots[i].address = miner_address(cfg.miners[m].id);
            slots[i].supports_first = i > 0 && times[i] > times[0];
            ++o.proofs[m];
            if (i == 0 || slots[i].supports_first)
                ++o.bonuses[m];
        }
        const auto paid = protocol::allocate_slots(slots, cfg.reward);
        protocol::Amount sum = 0;
        for (std::size_t j = 0; j < n; ++j) {
            const auto it = paid.find(miner_address(cfg.miners[j].id));
            o.totals[j] = it == paid.end() ? 0 : it->second;
            sum += o.totals[j];
        }
        o.conserved = sum == protocol::block_payout(slots, cfg.reward);
        return o;
    });

    RewardSummary out;
    std::vector<RunningStats> primary(n), bonus(n), total(n), share(n);
    for (const auto& o : outcomes) {
        if (!o.conserved)
            ++out.conservation_failures;
        for (std::size_t j = 0; j < n; ++j) {
            primary[j].add(static_cast<double>(o.proofs[j] * cfg.reward.primary));
            bonus[j].add(static_cast<double>(o.bonuses[j] * cfg.reward.bonus));
            total[j].add(static_cast<double>(o.totals[j]));
            share[j].add(static_cast<double>(o.proofs[j]) / static_cast<double>(k));
        }
    }
    const double R = static_cast<double>(cfg.reward.primary);
    const double B = static_cast<double>(cfg.reward.bonus);
    const double kd = cfg.k;
    for (std::size_t j = 0; j < n; ++j) {
        const double x = cfg.miners[j].hash_fraction;
        out.miners.push_back({cfg.miners[j].id, x, primary[j].estimate(), bonus[j].estimate(), total[j].estimate(),
                              share[j].estimate(), x * kd * (R + B / 2.0),
                              x * (kd * R + (kd + 1.0) / 2.0 * B)});
    }
    return out;
}

ResultTable reward_table(const RewardSummary& summary)
{
    ResultTable t;
    t.columns = {"miner", "hash_fraction", "primary_mean", "bonus_mean", "total_mean", "total_ci_low",
                 "total_ci_high", "predicted_total", "predicted_total_exact", "proof_share",
                 "proof_share_se", "trials"};
    for (const auto& m : summary.miners) {
        t.add_row({std::int64_t{m.id}, m.hash_fraction, m.primary.mean, m.bonus.mean, m.total.mean, m.total.ci_low,
                   m.total.ci_high, m.predicted_total, m.predicted_total_exact, m.proof_share.mean,
                   m.proof_share.std_error, static_cast<std::int64_t>(m.total.n)});
    }
    return t;
}

RankTimeSummary rank_time_correlation(int k, const TrialConfig& run, bool sorted_control)
{
    validate(run);
    if (k < 2)
        throw std::invalid_argument("rank_time_correlation: k must be at least 2");
    const auto uk = static_cast<std::size_t>(k);
    struct Outcome {
        std::vector<int> position; // generation position of rank i
    };
    // Hashes are generated one after another with i.i.d. uniform values; the
    // k lowest of `draws` give ranks, their indices give generation order.
    const std::size_t draws = 10 * uk;
    const auto outcomes = run_trials(run.trials, run.jobs, [&](std::uint64_t t) {
        auto rng = trial_rng(run.seed, t);
        std::vector<double> values(draws);
        for (auto& x : values)
            x = uniform01(rng);
        if (sorted_control)
            std::sort(values.begin(), values.end());
        std::vector<std::size_t> by_value(draws);
        std::iota(by_value.begin(), by_value.end(), 0);
        std::partial_sort(by_value.begin(), by_value.begin() + k, by_value.end(),
                          [&](std::size_t a, std::size_t b) { return values[a] < values[b]; });
        std::vector<std::size_t> by_time(by_value.begin(), by_value.begin() + k);
        std::sort(by_time.begin(), by_time.end());
        Outcome o;
        o.position.resize(uk);
        for (std::size_t rank = 0; rank < uk; ++rank) {
            const auto it = std::lower_bound(by_time.begin(), by_time.end(), by_value[rank]);
            o.position[rank] = static_cast<int>(it - by_time.begin());
        }
        return o;
    });

    CorrelationAccumulator acc;
    std::uint64_t after = 0, others = 0;
    for (const auto& o : outcomes) {
        for (std::size_t i = 0; i < uk; ++i) {
            acc.add(static_cast<double>(i), static_cast<double>(o.position[i]));
            if (i > 0) {
                ++others;
                if (o.position[i] > o.position[0])
                    ++after;
            }
        }
    }
    return {acc.correlation(), static_cast<double>(after) / static_cast<double>(others), acc.count()};
}

} // namespace bobtail::mining
