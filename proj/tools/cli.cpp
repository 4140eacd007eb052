#include "cli.hpp"

#include <bobtail/attack/attack_sim.hpp>
#include <bobtail/common/results.hpp>
#include <bobtail/common/rng.hpp>
#include <bobtail/mining/mining_sim.hpp>
#include <bobtail/net/orphan_sim.hpp>
#include <bobtail/net/traffic_sim.hpp>
#include <bobtail/stats/gamma.hpp>

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <iostream>
#include <map>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <thread>

namespace bobtail::cli {

namespace {

struct Common {
    std::uint64_t trials = 0;
    std::optional<std::uint64_t> seed;
    unsigned jobs = 1;
    std::string format = "csv";
    std::string output;
    std::string config;
};

/// Result of one subcommand: the table to write plus its resolved config.
struct Produced {
    ResultTable table;
    ConfigEcho config;
};

using Runner = std::function<Produced()>;

void add_common(CLI::App* sub, Common& c, std::uint64_t default_trials)
{
    c.trials = default_trials;
    sub->add_option("--trials", c.trials, "Monte Carlo trials")->check(CLI::PositiveNumber);
    sub->add_option("--seed", c.seed, "RNG seed; drawn from entropy when omitted");
    sub->add_option("--jobs", c.jobs, "worker threads (0 = all cores)");
    sub->add_option("--format", c.format, "csv or json")->check(CLI::IsMember({"csv", "json"}));
    sub->add_option("--output", c.output, "results file; defaults to $" + std::string(kOutputDirEnv) +
                                              "/<command>.<format>, else stdout");
    sub->add_option("--config", c.config, "key=value file of defaults; flags override");
}

/// Resolved option values, in declaration order.
ConfigEcho echo_options(const CLI::App* sub, std::uint64_t seed)
{
    ConfigEcho echo{{"command", sub->get_name()}};
    for (const auto* opt : sub->get_options()) {
        const std::string name = opt->get_single_name();
        if (name.empty() || name == "help" || name == "config" || name == "output")
            continue;
        std::string value;
        if (name == "seed") {
            value = std::to_string(seed);
        } else if (opt->get_expected_min() == 0) {
            value = opt->count() > 0 ? "true" : "false";
        } else if (opt->count() > 0) {
            const auto& res = opt->results();
            for (std::size_t i = 0; i < res.size(); ++i)
                value += (i ? "," : "") + res[i];
        } else {
            value = opt->get_default_str();
            if (value.size() >= 2 && value.front() == '[' && value.back() == ']')
                value = value.substr(1, value.size() - 2);
        }
        echo.emplace_back(name, value);
    }
    return echo;
}

mining::TrialConfig trial_config(const Common& c, std::uint64_t seed)
{
    unsigned jobs = c.jobs;
    if (jobs == 0)
        jobs = std::max(1U, std::thread::hardware_concurrency());
    return {c.trials, seed, jobs};
}

/// Splices `key=value` lines from --config in front of the explicit flags.
/// Keys given explicitly on the command line are skipped, so flags win.
std::vector<std::string> expand_config(std::vector<std::string> args)
{
    std::string path;
    for (std::size_t i = 0; i < args.size(); ++i) {
        if (args[i] == "--config" && i + 1 < args.size())
            path = args[i + 1];
        else if (args[i].starts_with("--config="))
            path = args[i].substr(9);
    }
    if (path.empty() || args.empty())
        return args;
    std::ifstream in(path);
    if (!in)
        throw CLI::ValidationError("--config", "cannot read " + path);
    std::vector<std::string> injected;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos)
            line.erase(hash);
        const auto first = line.find_first_not_of(" \t\r");
        if (first == std::string::npos)
            continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw CLI::ValidationError("--config", path + ":" + std::to_string(lineno) + ": expected key=value");
        auto trim = [](std::string s) {
            const auto b = s.find_first_not_of(" \t\r");
            const auto e = s.find_last_not_of(" \t\r");
            return b == std::string::npos ? std::string() : s.substr(b, e - b + 1);
        };
        const std::string key = trim(line.substr(0, eq));
        const std::string value = trim(line.substr(eq + 1));
        const std::string flag = "--" + key;
        const bool explicit_flag = std::any_of(args.begin(), args.end(), [&](const std::string& a) {
            return a == flag || a.starts_with(flag + "=");
        });
        if (!explicit_flag) {
            injected.push_back(flag);
            injected.push_back(value);
        }
    }
    args.insert(args.begin() + 1, injected.begin(), injected.end());
    return args;
}

std::filesystem::path output_path(const Common& c, const std::string& command)
{
    if (!c.output.empty())
        return c.output;
    if (const char* dir = std::getenv(kOutputDirEnv); dir && *dir)
        return std::filesystem::path(dir) / (command + "." + c.format);
    return {};
}

std::string cell_text(const Cell& cell)
{
    if (const auto* i = std::get_if<std::int64_t>(&cell))
        return std::to_string(*i);
    if (const auto* d = std::get_if<double>(&cell)) {
        std::ostringstream os;
        os << std::setprecision(6) << *d;
        return os.str();
    }
    return std::get<std::string>(cell);
}

/// Aligned, human-oriented rendering for the terminal.
void print_summary(std::ostream& out, const ResultTable& table)
{
    std::vector<std::size_t> width(table.columns.size());
    std::vector<std::vector<std::string>> text;
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        width[c] = table.columns[c].size();
    for (const auto& row : table.rows) {
        std::vector<std::string> r;
        for (std::size_t c = 0; c < row.size(); ++c) {
            r.push_back(cell_text(row[c]));
            width[c] = std::max(width[c], r.back().size());
        }
        text.push_back(std::move(r));
    }
    for (std::size_t c = 0; c < table.columns.size(); ++c)
        out << std::setw(static_cast<int>(width[c])) << table.columns[c] << (c + 1 < width.size() ? "  " : "\n");
    for (const auto& r : text) {
        for (std::size_t c = 0; c < r.size(); ++c)
            out << std::setw(static_cast<int>(width[c])) << r[c] << (c + 1 < r.size() ? "  " : "\n");
    }
}

/// Infinity in a result means something overflowed. NaN is allowed: tables
/// use it for quantities undefined at a given k.
void require_finite(const ResultTable& table)
{
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            if (const auto* d = std::get_if<double>(&row[c]); d && std::isinf(*d))
                throw std::domain_error("non-finite value in column " + table.columns[c]);
        }
    }
}

template <class T>
std::vector<T> nonempty(const std::vector<T>& xs, const char* name)
{
    if (xs.empty())
        throw std::invalid_argument(std::string(name) + " list is empty");
    return xs;
}

} // namespace

int run(const std::vector<std::string>& raw_args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Monte Carlo experiments for k-order-statistic proof of work", "bobtail"};
    app.option_defaults()->always_capture_default()->multi_option_policy(CLI::MultiOptionPolicy::TakeLast);
    app.require_subcommand(1);

    std::map<std::string, Runner> runners;
    std::map<std::string, Common> commons;
    std::uint64_t seed = 0;
    auto sub = [&](const std::string& name, const std::string& help, std::uint64_t trials) {
        auto* s = app.add_subcommand(name, help);
        add_common(s, commons[name], trials);
        return s;
    };
    auto list_opt = [](CLI::App* s, const std::string& flag, auto& target, const std::string& help) {
        return s->add_option(flag, target, help)->delimiter(',')->multi_option_policy(CLI::MultiOptionPolicy::TakeAll);
    };

    // blocktime
    std::vector<int> bt_ks{1, 2, 5, 10, 20, 40};
    double bt_rate = 1.0;
    bool bt_cdf = false;
    {
        auto* s = sub("blocktime", "block-time distribution of Y_k across k", 100000);
        list_opt(s, "--k", bt_ks, "k values");
        s->add_option("--rate", bt_rate, "r, hashes below v per interval");
        s->add_flag("--cdf", bt_cdf, "emit the empirical CDF grid instead of the summary");
        runners["blocktime"] = [&, s] {
            mining::BlocktimeConfig cfg;
            cfg.ks = nonempty(bt_ks, "k");
            cfg.rate = bt_rate;
            cfg.run = trial_config(commons["blocktime"], seed);
            const auto rows = mining::run_blocktime_experiment(cfg);
            return Produced{bt_cdf ? mining::blocktime_cdf_table(cfg, rows) : mining::blocktime_table(rows),
                            echo_options(s, seed)};
        };
    }

    // moments
    std::vector<int> mo_ks{1, 2, 5, 10, 20, 40};
    double mo_v = 1.0;
    {
        auto* s = sub("moments", "mean and variance of W_k against closed forms", 100000);
        list_opt(s, "--k", mo_ks, "k values");
        s->add_option("--v", mo_v, "expected minimum hash per interval");
        runners["moments"] = [&, s] {
            mining::MomentsConfig cfg;
            cfg.ks = nonempty(mo_ks, "k");
            cfg.expected_min = mo_v;
            cfg.run = trial_config(commons["moments"], seed);
            return Produced{mining::moments_table(mining::run_moments_experiment(cfg)), echo_options(s, seed)};
        };
    }

    // traffic
    std::vector<int> tr_ks{1, 2, 3, 10};
    std::vector<double> tr_ps{0.999999};
    {
        auto* s = sub("traffic", "proof announcements per block under the broadcast filter", 100000);
        list_opt(s, "--k", tr_ks, "k values");
        list_opt(s, "--p", tr_ps, "broadcast probabilities");
        runners["traffic"] = [&, s] {
            std::vector<net::TrafficSummary> rows;
            for (int k : nonempty(tr_ks, "k")) {
                for (double p : nonempty(tr_ps, "p")) {
                    net::TrafficConfig cfg{k, p, trial_config(commons["traffic"], seed)};
                    rows.push_back(net::run_traffic_experiment(cfg));
                }
            }
            return Produced{net::traffic_table(rows), echo_options(s, seed)};
        };
    }

    // orphans
    std::vector<int> or_ks{1, 2, 5, 10, 20, 40};
    double or_tau = 10.0, or_T = 600.0, or_p = 0.999999;
    int or_miners = 20;
    {
        auto* s = sub("orphans", "orphan rate under constant propagation delay", 10000);
        list_opt(s, "--k", or_ks, "k values");
        s->add_option("--tau", or_tau, "propagation delay, seconds");
        s->add_option("--T", or_T, "expected block time, seconds");
        s->add_option("--miners", or_miners, "number of equal miners");
        s->add_option("--p", or_p, "broadcast probability");
        runners["orphans"] = [&, s] {
            std::vector<net::OrphanSummary> rows;
            for (int k : nonempty(or_ks, "k")) {
                net::OrphanConfig cfg{k, or_tau, or_T, or_miners, or_p, trial_config(commons["orphans"], seed)};
                rows.push_back(net::run_orphan_experiment(cfg));
                for (const auto& w : rows.back().warnings)
                    err << "warning: k=" << k << ": " << w << "\n";
            }
            return Produced{net::orphan_table(rows), echo_options(s, seed)};
        };
    }

    // rewards
    int rw_k = 40;
    std::vector<double> rw_fractions{0.25, 0.75};
    long long rw_R = 1, rw_B = 1;
    {
        auto* s = sub("rewards", "honest reward shares against x k (R + B/2)", 100000);
        s->add_option("--k", rw_k, "package size");
        list_opt(s, "--fractions", rw_fractions, "hash fractions, summing to 1");
        s->add_option("--R", rw_R, "primary reward per proof");
        s->add_option("--B", rw_B, "bonus per proof supporting the 1OS");
        runners["rewards"] = [&, s] {
            mining::RewardConfig cfg;
            cfg.k = rw_k;
            int id = 0;
            for (double x : nonempty(rw_fractions, "fractions"))
                cfg.miners.push_back({id++, x});
            cfg.reward = {rw_R, rw_B};
            cfg.run = trial_config(commons["rewards"], seed);
            return Produced{mining::reward_table(mining::run_reward_experiment(cfg)), echo_options(s, seed)};
        };
    }

    // doublespend
    std::vector<double> ds_q{0.4};
    std::vector<int> ds_z{8}, ds_k{1};
    int ds_margin = -1;
    {
        auto* s = sub("doublespend", "doublespend success against an embargo of z blocks", 10000);
        list_opt(s, "--q", ds_q, "attacker hash shares");
        list_opt(s, "--z", ds_z, "embargo lengths");
        list_opt(s, "--k", ds_k, "k values");
        s->add_option("--stop-margin", ds_margin, "honest lead at which the attacker gives up; -1 = 3z+5");
        runners["doublespend"] = [&, s] {
            std::vector<attack::DoublespendSummary> rows;
            for (double q : nonempty(ds_q, "q"))
                for (int z : nonempty(ds_z, "z"))
                    for (int k : nonempty(ds_k, "k")) {
                        attack::DoublespendConfig cfg{{q, k, trial_config(commons["doublespend"], seed)}, z, ds_margin};
                        rows.push_back(attack::simulate_doublespend(cfg));
                    }
            return Produced{attack::doublespend_table(rows), echo_options(s, seed)};
        };
    }

    // selfish
    std::vector<double> sm_q{0.4};
    std::vector<int> sm_k{1};
    std::uint64_t sm_horizon = 10000;
    {
        auto* s = sub("selfish", "selfish-mining main-chain share", 200);
        list_opt(s, "--q", sm_q, "attacker hash shares");
        list_opt(s, "--k", sm_k, "k values");
        s->add_option("--horizon", sm_horizon, "main-chain blocks per trial")->check(CLI::PositiveNumber);
        runners["selfish"] = [&, s] {
            std::vector<attack::SelfishSummary> rows;
            for (double q : nonempty(sm_q, "q"))
                for (int k : nonempty(sm_k, "k")) {
                    attack::SelfishConfig cfg{{q, k, trial_config(commons["selfish"], seed)}, sm_horizon};
                    rows.push_back(attack::simulate_selfish_mining(cfg));
                }
            return Produced{attack::selfish_table(rows), echo_options(s, seed)};
        };
    }

    // withholding and zczc share their flags
    struct IntraFlags {
        std::vector<double> q{0.3};
        int k = 40;
        long long R = 1, B = 1;
        int honest = 10;
        double release = 1.05;
    };
    IntraFlags wh, zc;
    zc.q = {0.2};
    auto intra_options = [&](CLI::App* s, IntraFlags& f) {
        list_opt(s, "--q", f.q, "attacker hash shares");
        s->add_option("--k", f.k, "package size");
        s->add_option("--R", f.R, "primary reward per proof");
        s->add_option("--B", f.B, "bonus per proof supporting the 1OS");
        s->add_option("--honest-miners", f.honest, "number of equal honest miners");
        s->add_option("--release-factor", f.release, "attacker releases when honest best mean <= factor * t_k");
    };
    auto intra_config = [&](const IntraFlags& f, double q, const std::string& name) {
        attack::WithholdingConfig cfg;
        cfg.attack = {q, f.k, trial_config(commons[name], seed)};
        cfg.reward = {f.R, f.B};
        cfg.n_honest = f.honest;
        cfg.release_factor = f.release;
        return cfg;
    };
    {
        auto* s = sub("withholding", "proof-withholding attack rewards against honest baselines", 10000);
        intra_options(s, wh);
        runners["withholding"] = [&, s] {
            std::vector<attack::WithholdingSummary> rows;
            for (double q : nonempty(wh.q, "q"))
                rows.push_back(attack::simulate_withholding(intra_config(wh, q, "withholding")));
            return Produced{attack::withholding_table(rows), echo_options(s, seed)};
        };
    }
    {
        auto* s = sub("zczc", "zero-confirmation doublespend rewards with and without forfeiture", 2000);
        intra_options(s, zc);
        runners["zczc"] = [&, s] {
            std::vector<attack::ZczcSummary> rows;
            for (double q : nonempty(zc.q, "q"))
                rows.push_back(attack::simulate_zczc({intra_config(zc, q, "zczc")}));
            return Produced{attack::zczc_table(rows), echo_options(s, seed)};
        };
    }

    // dor
    std::vector<double> dr_split{0.5};
    std::vector<std::string> dr_policy{"naive", "convention"};
    double dr_latency = 2.0, dr_grace = 5.0, dr_T = 600.0;
    int dr_k = 40;
    {
        auto* s = sub("dor", "denial-of-reward forfeiture under naive and conventional policies", 10000);
        list_opt(s, "--split", dr_split, "fractions of miners hearing T' first");
        list_opt(s, "--policy", dr_policy, "naive, convention");
        s->add_option("--latency", dr_latency, "seconds until every miner has both transactions");
        s->add_option("--grace", dr_grace, "convention's grace period, seconds");
        s->add_option("--T", dr_T, "expected block time, seconds");
        s->add_option("--k", dr_k, "package size");
        runners["dor"] = [&, s] {
            std::vector<attack::DorSummary> rows;
            for (double split : nonempty(dr_split, "split"))
                for (const auto& p : nonempty(dr_policy, "policy")) {
                    attack::DorConfig cfg{split, dr_latency, dr_grace, dr_T, dr_k, attack::parse_dor_policy(p),
                                          trial_config(commons["dor"], seed)};
                    rows.push_back(attack::simulate_dor(cfg));
                }
            return Produced{attack::dor_table(rows), echo_options(s, seed)};
        };
    }

    auto* check = app.add_subcommand("selfcheck", "verify the statistics core against Monte Carlo oracles");
    unsigned check_jobs = 1;
    std::optional<std::uint64_t> check_seed;
    check->add_option("--jobs", check_jobs, "worker threads (0 = all cores)");
    check->add_option("--seed", check_seed, "RNG seed");

    try {
        auto args = expand_config(raw_args);
        std::reverse(args.begin(), args.end());
        app.parse(args);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e, out, err);
        return code == 0 ? kOk : kUsage;
    }

    try {
        if (check->parsed()) {
            if (check_jobs == 0)
                check_jobs = std::max(1U, std::thread::hardware_concurrency());
            const int failures = selfcheck(out, check_jobs, check_seed.value_or(20240601ULL));
            return failures == 0 ? kOk : kSelfcheckFailed;
        }
        const auto* chosen = app.get_subcommands().front();
        const std::string name = chosen->get_name();
        const Common& c = commons.at(name);
        seed = c.seed.value_or(entropy_seed());
        const Produced result = runners.at(name)();
        require_finite(result.table);
        const auto format = parse_output_format(c.format);
        const auto path = output_path(c, name);
        if (path.empty()) {
            write_results(out, result.table, result.config, format);
        } else {
            write_results_file(path, result.table, result.config, format);
            out << render_config(result.config) << "\n";
            print_summary(out, result.table);
            out << "wrote " << path.string() << "\n";
        }
        return kOk;
    } catch (const stats::ConvergenceError& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::domain_error& e) {
        err << "numeric failure: " << e.what() << "\n";
        return kNumeric;
    } catch (const std::invalid_argument& e) {
        err << "invalid configuration: " << e.what() << "\n";
        return kUsage;
    } catch (const std::runtime_error& e) {
        err << "error: " << e.what() << "\n";
        return kUsage;
    }
}

} // namespace bobtail::cli
