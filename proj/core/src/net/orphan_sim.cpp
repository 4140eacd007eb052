#include <bobtail/net/orphan_sim.hpp>

#include <bobtail/common/parallel.hpp>
#include <bobtail/common/rng.hpp>
#include <bobtail/net/event_queue.hpp>
#include <bobtail/stats/gamma.hpp>
#include <bobtail/stats/mining_stats.hpp>

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace bobtail::net {

namespace {

struct Known {
    double value;
    double support; // lowest value the owner knew when mining it; +inf if none
    int owner; // miner identity, not node slot
};

struct Node {
    std::vector<Known> known; // ascending by value
    bool stopped = false;
    int identity = 0;
};

struct TrialOutcome {
    bool orphan = false;
    double first_block = 0.0;
    std::uint64_t proofs = 0;
    std::uint64_t violations = 0;
    std::uint64_t trace = 0;
};

class Trial {
public:
    Trial(const OrphanConfig& cfg, double threshold, std::uint64_t seed, std::uint64_t index)
        : cfg_(cfg), threshold_(threshold), rng_(trial_rng(seed, index)),
          nodes_(static_cast<std::size_t>(cfg.n_miners)),
          budget_(static_cast<double>(cfg.k) * stats::target_for_k(cfg.k, 1.0)),
          proof_rate_(threshold / cfg.block_time)
    {
        for (std::size_t i = 0; i < nodes_.size(); ++i)
            nodes_[i].identity = static_cast<int>(i);
    }

    TrialOutcome run()
    {
        schedule_next_proof(0.0);
        // A second release counts only if it happens strictly before the
        // first block reaches its author.
        double end = INFINITY;
        while (!queue_.empty() && queue_.top().time < end) {
            const SimEvent e = queue_.pop();
            out_.trace = trace_mix(out_.trace, e);
            switch (e.kind) {
            case EventKind::proof_found: on_found(e); break;
            case EventKind::proof_arrival: on_arrival(e); break;
            case EventKind::block_arrival: on_block(e); break;
            case EventKind::block_found: break;
            }
            if (blocks_ == 1 && std::isinf(end))
                end = out_.first_block + cfg_.tau;
        }
        out_.orphan = blocks_ >= 2;
        return out_;
    }

private:
    void schedule_next_proof(double now)
    {
        queue_.push({now + exponential(rng_, 1.0 / proof_rate_), EventKind::proof_found, 0, -1, -1, 0});
    }

    void on_found(const SimEvent& e)
    {
        const double value = uniform01(rng_) * threshold_;
        const int owner = static_cast<int>(rng_() % static_cast<std::uint64_t>(cfg_.n_miners));
        const auto& miner = nodes_[static_cast<std::size_t>(owner)];
        const Known proof{value, miner.known.empty() ? INFINITY : miner.known.front().value, miner.identity};
        const std::uint64_t id = proofs_.size();
        proofs_.push_back({proof, e.time, owner});
        ++out_.proofs;
        learn(owner, proof);
        for (int d = 0; d < cfg_.n_miners; ++d) {
            if (d != owner)
                queue_.push({e.time + cfg_.tau, EventKind::proof_arrival, id, owner, d, 0});
        }
        schedule_next_proof(e.time);
        try_release(owner, e.time);
    }

    void on_arrival(const SimEvent& e)
    {
        const auto& p = proofs_[e.payload];
        if (p.born + cfg_.tau > e.time)
            ++out_.violations;
        learn(e.destination, p.proof);
        try_release(e.destination, e.time);
    }

    // Honest miners stop once they receive a package. Rule (i) rejection of a
    // worse package does not matter here: the trial only counts releases.
    void on_block(const SimEvent& e) { nodes_[static_cast<std::size_t>(e.destination)].stopped = true; }

    void learn(int node, Known k)
    {
        auto& known = nodes_[static_cast<std::size_t>(node)].known;
        const auto at = std::upper_bound(known.begin(), known.end(), k.value,
                                         [](double v, const Known& x) { return v < x.value; });
        known.insert(at, k);
    }

    void try_release(int node, double now)
    {
        auto& n = nodes_[static_cast<std::size_t>(node)];
        const auto k = static_cast<std::size_t>(cfg_.k);
        if (n.stopped || n.known.size() < k || n.known.front().owner != n.identity)
            return;
        // Only proofs whose support is at or above the 1OS may join the package.
        const double first = n.known.front().value;
        double sum = 0.0;
        std::size_t used = 0;
        for (const auto& p : n.known) {
            if (used == k)
                break;
            if (p.support < first)
                continue;
            sum += p.value;
            ++used;
        }
        if (used < k || sum > budget_)
            return;
        if (blocks_++ == 0)
            out_.first_block = now;
        const std::uint64_t id = blocks_ - 1;
        queue_.push({now, EventKind::block_found, id, node, node, 0});
        for (int d = 0; d < cfg_.n_miners; ++d) {
            if (d != node)
                queue_.push({now + cfg_.tau, EventKind::block_arrival, id, node, d, 0});
        }
        replace_author(node, now, id);
    }

    // The author drops out and a new honest miner takes over its hash rate.
    // The newcomer starts with the view of an ordinary peer: proofs that have
    // finished propagating, plus the author's recent ones still in flight.
    void replace_author(int node, double now, std::uint64_t block)
    {
        auto& n = nodes_[static_cast<std::size_t>(node)];
        n.known.clear();
        n.stopped = false;
        n.identity = next_identity_++;
        for (std::size_t i = 0; i < proofs_.size(); ++i) {
            const auto& p = proofs_[i];
            if (p.born + cfg_.tau <= now)
                learn(node, p.proof);
            else if (p.slot == node)
                queue_.push({p.born + cfg_.tau, EventKind::proof_arrival, i, node, node, 0});
        }
        queue_.push({now + cfg_.tau, EventKind::block_arrival, block, node, node, 0});
    }

    struct Issued {
        Known proof;
        double born;
        int slot;
    };

    const OrphanConfig& cfg_;
    double threshold_;
    Rng rng_;
    std::vector<Node> nodes_;
    double budget_;
    double proof_rate_;
    EventQueue queue_;
    std::vector<Issued> proofs_;
    std::uint64_t blocks_ = 0;
    int next_identity_ = cfg_.n_miners;
    TrialOutcome out_;
};

} // namespace

OrphanSummary run_orphan_experiment(const OrphanConfig& cfg)
{
    mining::validate(cfg.run);
    if (cfg.k < 1)
        throw std::invalid_argument("k must be at least 1");
    if (!(cfg.tau >= 0.0) || !(cfg.block_time > 0.0))
        throw std::invalid_argument("need tau >= 0 and T > 0");
    if (cfg.n_miners < 1)
        throw std::invalid_argument("need at least one miner");
    if (!(cfg.p_threshold > 0.0 && cfg.p_threshold < 1.0))
        throw std::invalid_argument("p must lie in (0, 1)");

    // Values are in units of v, so the threshold is Quantile-Gamma(p; k, 1).
    const double threshold = stats::gamma_quantile(cfg.p_threshold, cfg.k, 1.0);
    const auto outcomes = run_trials(cfg.run.trials, cfg.run.jobs, [&](std::uint64_t t) {
        return Trial(cfg, threshold, cfg.run.seed, t).run();
    });

    OrphanSummary s;
    s.k = cfg.k;
    s.tau = cfg.tau;
    s.block_time = cfg.block_time;
    s.n_miners = cfg.n_miners;
    s.bound = stats::orphan_rate_bound(cfg.tau, cfg.block_time);
    std::uint64_t orphans = 0, proofs = 0;
    RunningStats first;
    for (const auto& o : outcomes) {
        orphans += o.orphan ? 1 : 0;
        proofs += o.proofs;
        first.add(o.first_block);
        s.causality_violations += o.violations;
        s.trace_digest = mix64(s.trace_digest ^ o.trace);
    }
    s.orphan_rate = proportion_estimate(orphans, outcomes.size());
    s.first_block_time = first.estimate();
    s.proofs_per_trial = static_cast<double>(proofs) / static_cast<double>(outcomes.size());
    if (cfg.tau >= cfg.block_time)
        s.warnings.push_back("tau >= T: outside the evaluated regime");
    if (cfg.run.trials < 1000)
        s.warnings.push_back("fewer than 1000 trials: intervals are unreliable");
    return s;
}

ResultTable orphan_table(const std::vector<OrphanSummary>& rows)
{
    ResultTable t;
    t.columns = {"k", "tau", "T", "n_miners", "orphan_rate", "ci_low", "ci_high", "bound",
                 "mean_block_time", "proofs_per_trial", "trials"};
    for (const auto& r : rows) {
        t.add_row({std::int64_t{r.k}, r.tau, r.block_time, std::int64_t{r.n_miners}, r.orphan_rate.mean,
                   r.orphan_rate.ci_low, r.orphan_rate.ci_high, r.bound, r.first_block_time.mean,
                   r.proofs_per_trial, static_cast<std::int64_t>(r.orphan_rate.n)});
    }
    return t;
}

} // namespace bobtail::net
