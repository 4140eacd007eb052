#include <bobtail/protocol/assembly.hpp>

#include <bobtail/protocol/merkle.hpp>
#include <bobtail/protocol/rewards.hpp>
#include <bobtail/protocol/serialize.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <set>
#include <stdexcept>

namespace bobtail::protocol {

namespace {

class Search {
public:
    Search(std::span<const SelectionCandidate> c, std::size_t k, const Uint256& target)
        : c_(c), k_(k), budget_(target.resize<5>() * static_cast<std::uint64_t>(k))
    {
        std::size_t n = c.size();
        prefix_.resize(n + 1);
        for (std::size_t i = 0; i < n; ++i)
            prefix_[i + 1] = prefix_[i] + c[i].value.resize<5>();
        // Candidate i can only join if the k-1 cheapest others leave room for it.
        if (n >= k && k >= 2) {
            const Uint320 base = prefix_[k - 1];
            while (n > k - 1 && base + c[n - 1].value.resize<5>() > budget_)
                --n;
        }
        n_ = n;
        if (n_ < k_)
            return;

        for (std::size_t i = 1; i < n_; ++i) {
            if (std::find(classes_.begin(), classes_.end(), c[i].reward) == classes_.end())
                classes_.push_back(c[i].reward);
        }
        std::sort(classes_.rbegin(), classes_.rend());

        // Values rescaled so the budget is 1; used only inside bounds.
        scale_ = budget_.to_double();
        if (!(scale_ > 0.0))
            scale_ = 1.0;
        value_.resize(n_);
        for (std::size_t i = 0; i < n_; ++i)
            value_[i] = c[i].value.to_double() / scale_;
        lambda_ = choose_lambda();
        build_tables(lambda_);
        reward_cap_ = max_reward();
    }

    std::optional<SelectionResult> run(std::uint64_t max_nodes)
    {
        if (n_ < k_ || !reward_cap_)
            return std::nullopt;
        max_nodes_ = max_nodes;
        chosen_.push_back(0);
        visit(1, c_[0].value.resize<5>(), c_[0].reward, c_[0].receipt_time);
        if (!found_)
            return std::nullopt;
        return SelectionResult{best_, !exhausted_, nodes_};
    }

private:
    /// Highest reward over all feasible packages, or nullopt if none is
    /// feasible. Within a class the cheapest members dominate, so it is
    /// enough to enumerate how many slots each class gets.
    std::optional<Amount> max_reward() const
    {
        const std::size_t nc = classes_.size();
        std::vector<std::vector<Uint320>> sums(nc, std::vector<Uint320>(1));
        for (std::size_t i = 1; i < n_; ++i) {
            auto& v = sums[class_of(c_[i].reward)];
            if (v.size() < k_)
                v.push_back(v.back() + c_[i].value.resize<5>());
        }
        std::optional<Amount> best;
        const Uint320 room = budget_ - c_[0].value.resize<5>();
        if (c_[0].value.resize<5>() > budget_)
            return std::nullopt;
        // Depth-first over classes; `left` slots remain for classes j..nc-1.
        auto rec = [&](auto&& self, std::size_t j, std::size_t left, const Uint320& used, Amount reward) -> void {
            if (j == nc) {
                if (left == 0 && (!best || reward > *best))
                    best = reward;
                return;
            }
            const std::size_t most = std::min(left, sums[j].size() - 1);
            for (std::size_t m = most + 1; m-- > 0;) {
                const Uint320 total = used + sums[j][m];
                if (total > room)
                    continue;
                self(self, j + 1, left - m, total, reward + static_cast<Amount>(m) * classes_[j]);
            }
        };
        rec(rec, 0, k_ - 1, Uint320{}, c_[0].reward);
        return best;
    }

    std::size_t class_of(Amount r) const
    {
        return static_cast<std::size_t>(std::find(classes_.begin(), classes_.end(), r) - classes_.begin());
    }

    // For every suffix and reward class, prefix sums of the smallest keys
    // t + lambda v. Counts are capped at k-1, the most a completion can use.
    void build_tables(double lambda)
    {
        const std::size_t nc = classes_.size();
        count_.assign((n_ + 1) * nc, 0);
        key_.assign((n_ + 1) * nc * k_, 0.0);
        std::vector<std::vector<double>> sorted(nc);
        for (std::size_t i = n_; i-- > 1;) {
            auto& v = sorted[class_of(c_[i].reward)];
            const double key = c_[i].receipt_time + lambda * value_[i];
            v.insert(std::upper_bound(v.begin(), v.end(), key), key);
            for (std::size_t j = 0; j < nc; ++j) {
                count_[i * nc + j] = std::min(sorted[j].size(), k_ - 1);
                double acc = 0.0;
                for (std::size_t m = 0; m < count_[i * nc + j]; ++m) {
                    acc += sorted[j][m];
                    key_[(i * nc + j) * k_ + m + 1] = acc;
                }
            }
        }
    }

    /// Any lambda >= 0 gives a valid bound; pick the one tightest at the root.
    double choose_lambda()
    {
        double time_scale = 0.0;
        for (std::size_t i = 1; i < n_; ++i)
            time_scale = std::max(time_scale, std::abs(c_[i].receipt_time));
        if (!(time_scale > 0.0))
            return 0.0;
        const double rest = 1.0 - value_[0];
        double best_lambda = 0.0;
        double best_bound = -std::numeric_limits<double>::infinity();
        for (int e = -12; e <= 12; ++e) {
            const double lambda = e == -12 ? 0.0 : time_scale * std::ldexp(1.0, e);
            build_tables(lambda);
            const double b = bound(1, k_ - 1).second - lambda * rest;
            if (b > best_bound) {
                best_bound = b;
                best_lambda = lambda;
            }
        }
        return best_lambda;
    }

    /// Greedy completion of `need` slots from suffix i taking the highest
    /// reward classes first and, within a class, the smallest keys. Its
    /// reward is an upper bound; its key sum bounds the completions that
    /// attain that reward.
    std::pair<Amount, double> bound(std::size_t i, std::size_t need) const
    {
        const std::size_t nc = classes_.size();
        Amount reward = 0;
        double key = 0.0;
        for (std::size_t j = 0; j < nc && need > 0; ++j) {
            const std::size_t take = std::min(need, count_[i * nc + j]);
            reward += static_cast<Amount>(take) * classes_[j];
            key += key_[(i * nc + j) * k_ + take];
            need -= take;
        }
        return {reward, key};
    }

    void visit(std::size_t i, const Uint320& sum, Amount reward, double time)
    {
        if (exhausted_)
            return;
        if (max_nodes_ != 0 && ++nodes_ > max_nodes_ && found_) {
            exhausted_ = true;
            return;
        }
        const std::size_t need = k_ - chosen_.size();
        if (need == 0) {
            // The cap is the exact optimum; anything short of it never wins.
            if (reward != *reward_cap_)
                return;
            if (!found_ || time < best_time_) {
                found_ = true;
                best_ = chosen_;
                best_reward_ = reward;
                best_time_ = time;
            }
            return;
        }
        if (n_ - i < need)
            return;
        // Cheapest completion uses the next `need` values, since they are sorted.
        if (sum + (prefix_[i + need] - prefix_[i]) > budget_)
            return;
        const auto [r, key] = bound(i, need);
        if (reward + r < *reward_cap_)
            return;
        if (found_) {
            if (reward + r < best_reward_)
                return;
            if (reward + r == best_reward_) {
                // Completion time >= sum of keys - lambda * (value room left).
                const double room = (budget_ - sum).to_double() / scale_;
                double t = time + key - lambda_ * room;
                t -= 1e-9 * (1.0 + std::abs(t));
                if (t >= best_time_)
                    return;
            }
        }
        chosen_.push_back(i);
        visit(i + 1, sum + c_[i].value.resize<5>(), reward + c_[i].reward, time + c_[i].receipt_time);
        chosen_.pop_back();
        visit(i + 1, sum, reward, time);
    }

    std::span<const SelectionCandidate> c_;
    std::size_t k_;
    std::size_t n_ = 0;
    Uint320 budget_;
    std::vector<Uint320> prefix_;
    std::vector<Amount> classes_;    // distinct rewards, descending
    double scale_ = 1.0;
    std::vector<double> value_;      // value / budget
    double lambda_ = 0.0;
    std::vector<std::size_t> count_; // [suffix][class], capped at k-1
    std::vector<double> key_;        // [suffix][class][m]

    std::optional<Amount> reward_cap_;
    std::uint64_t max_nodes_ = 0;
    std::uint64_t nodes_ = 0;
    bool exhausted_ = false;

    std::vector<std::size_t> chosen_;
    bool found_ = false;
    std::vector<std::size_t> best_;
    Amount best_reward_ = 0;
    double best_time_ = 0.0;
};

} // namespace

namespace {

void check_selection_input(std::span<const SelectionCandidate> candidates, int k)
{
    if (k < 1)
        throw std::invalid_argument("select_package: k must be at least 1");
    for (std::size_t i = 1; i < candidates.size(); ++i) {
        if (!(candidates[i - 1].value < candidates[i].value))
            throw std::invalid_argument("select_package: candidates must be strictly ascending");
    }
}

} // namespace

std::optional<std::vector<std::size_t>> select_package(std::span<const SelectionCandidate> candidates,
                                                       int k, const Uint256& target)
{
    check_selection_input(candidates, k);
    auto r = Search(candidates, static_cast<std::size_t>(k), target).run(0);
    if (!r)
        return std::nullopt;
    return std::move(r->indices);
}

std::optional<SelectionResult> select_package_limited(std::span<const SelectionCandidate> candidates, int k,
                                                      const Uint256& target, std::uint64_t max_nodes)
{
    check_selection_input(candidates, k);
    return Search(candidates, static_cast<std::size_t>(k), target).run(max_nodes);
}

std::optional<Block> assemble_proof_package(const AssemblyRequest& request, const ConsensusParams& params,
                                            const RewardParams& reward, const Signer& signer,
                                            const Digest& digest)
{
    struct Entry {
        Uint256 value;
        const CandidateProof* proof;
    };
    std::vector<Entry> entries;
    entries.reserve(request.candidates.size());
    for (const auto& c : request.candidates)
        entries.push_back({proof_value(c.proof, digest), &c});
    if (entries.empty())
        return std::nullopt;
    std::sort(entries.begin(), entries.end(), [](const Entry& a, const Entry& b) {
        return a.value < b.value || (a.value == b.value && a.proof->receipt_time < b.proof->receipt_time);
    });
    // A proof heard twice keeps its first receipt.
    entries.erase(std::unique(entries.begin(), entries.end(),
                              [](const Entry& a, const Entry& b) { return a.value == b.value; }),
                  entries.end());

    const auto& first = *entries.front().proof;
    const Uint256 v1 = entries.front().value;
    if (first.proof.address != request.key.address || !first.nonce || !first.nonce->extras.empty())
        return std::nullopt;
    if (transaction_root(request.transactions, digest) != first.proof.merkle_root)
        throw std::invalid_argument("assemble_proof_package: transactions do not match the 1OS root");

    std::set<Uint256> exposed;
    for (const auto& b : request.bounties) {
        const bool conflicting =
            std::any_of(request.transactions.begin(), request.transactions.end(),
                        [&](const Transaction& tx) { return tx.conflicts(b.tx); });
        if (conflicting && b.target_root != first.proof.merkle_root && verify_bounty(b, b.target_root, digest))
            exposed.insert(b.target_root);
    }

    std::vector<SelectionCandidate> pool;
    std::vector<const CandidateProof*> proofs;
    pool.push_back({v1, reward.primary + reward.bonus, first.receipt_time});
    proofs.push_back(&first);
    for (std::size_t i = 1; i < entries.size(); ++i) {
        const auto& p = entries[i].proof->proof;
        if (p.prior != first.proof.prior || p.support < v1)
            continue;
        const bool pays_me = p.address == request.key.address || exposed.contains(p.merkle_root);
        const Amount r = pays_me ? reward.primary + (p.support == v1 ? reward.bonus : 0) : 0;
        pool.push_back({entries[i].value, r, entries[i].proof->receipt_time});
        proofs.push_back(entries[i].proof);
    }

    const auto picked = select_package(pool, params.k, params.target);
    if (!picked)
        return std::nullopt;

    Block block;
    block.transactions = request.transactions;
    for (std::size_t i : *picked)
        block.proofs.push_back(proofs[i]->proof);
    std::set<Uint256> packaged_roots;
    for (std::size_t i = 1; i < block.proofs.size(); ++i)
        packaged_roots.insert(block.proofs[i].merkle_root);
    std::set<Uint256> used;
    for (const auto& b : request.bounties) {
        if (exposed.contains(b.target_root) && packaged_roots.contains(b.target_root) &&
            used.insert(b.target_root).second)
            block.bounties.push_back(b);
    }

    auto& h = block.header;
    const NonceBody& nonce = *first.nonce;
    h.version = nonce.version;
    h.prior = first.proof.prior;
    h.difficulty = nonce.difficulty;
    h.timestamp = nonce.timestamp;
    h.subnonce = nonce.nonce;
    h.tx_root = first.proof.merkle_root;
    h.support = first.proof.support;
    h.proof_root = proof_root(block.proofs, digest);
    h.bounty_root = bounty_root(block.bounties, digest);
    block.coinbase = to_coinbase(allocate_rewards(block, reward, digest));
    block.signature = signer.sign(serialize(h), request.key);
    return block;
}

} // namespace bobtail::protocol
