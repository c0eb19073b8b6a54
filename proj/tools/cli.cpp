// bjsplit command-line driver: tables, comparisons, benchmarks, simulation.
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <functional>
#include <iostream>
#include <memory>
#include <map>
#include <mutex>
#include <sstream>
#include <stdexcept>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"

#include "bjsplit/approx_split.hpp"
#include "bjsplit/game_ev.hpp"
#include "bjsplit/mc.hpp"
#include "bjsplit/split_engine.hpp"

using namespace bj;
using nlohmann::json;

namespace {

// ---------------------------------------------------------------- output ---

struct Table {
    std::string name;
    std::vector<std::pair<std::string, std::string>> meta;
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

std::string fmt_ev(double v) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%+.6f", v);
    return buf;
}

std::string fmt(double v, int digits = 6) {
    char buf[48];
    std::snprintf(buf, sizeof buf, "%.*f", digits, v);
    return buf;
}

void emit_csv(const Table& t, std::ostream& os) {
    for (const auto& [k, v] : t.meta) os << "# " << k << ": " << v << "\n";
    for (std::size_t i = 0; i < t.columns.size(); ++i)
        os << t.columns[i] << (i + 1 < t.columns.size() ? "," : "\n");
    for (const auto& row : t.rows)
        for (std::size_t i = 0; i < row.size(); ++i)
            os << row[i] << (i + 1 < row.size() ? "," : "\n");
}

void emit_markdown(const Table& t, std::ostream& os) {
    os << "# " << t.name << "\n\n";
    for (const auto& [k, v] : t.meta) os << "- " << k << ": " << v << "\n";
    os << "\n|";
    for (const auto& c : t.columns) os << " " << c << " |";
    os << "\n|";
    for (std::size_t i = 0; i < t.columns.size(); ++i) os << "---|";
    os << "\n";
    for (const auto& row : t.rows) {
        os << "|";
        for (const auto& cell : row) os << " " << cell << " |";
        os << "\n";
    }
}

void emit_json(const Table& t, std::ostream& os) {
    json j;
    j["name"] = t.name;
    for (const auto& [k, v] : t.meta) j["meta"][k] = v;
    j["rows"] = json::array();
    for (const auto& row : t.rows) {
        json r;
        for (std::size_t i = 0; i < row.size(); ++i) r[t.columns[i]] = row[i];
        j["rows"].push_back(std::move(r));
    }
    os << j.dump(2) << "\n";
}

void write_table(const Table& t, const std::string& format, const std::string& out_path) {
    std::ostringstream buf;
    if (format == "csv")
        emit_csv(t, buf);
    else if (format == "markdown")
        emit_markdown(t, buf);
    else
        emit_json(t, buf);
    if (out_path.empty()) {
        std::cout << buf.str();
    } else {
        std::ofstream f(out_path);
        if (!f) throw std::runtime_error("cannot open output file: " + out_path);
        f << buf.str();
    }
}

// ----------------------------------------------------------------- flags ---

struct CommonOpts {
    int decks = 1;
    std::string soft17 = "stand";
    std::string dd = "any";
    std::string dd_after_split = "none";
    int max_hands = 2;
    bool resplit_aces = false;
    std::string pairs = "A,2,3,4,5,6,7,8,9,T";
    std::string ups = "A,2,3,4,5,6,7,8,9,T";
    int cache_depth = -1;
    std::int64_t cache_bytes = -1;
    int workers = 1;
    std::string format = "markdown";
    std::string out;
};

DDOption parse_dd(const std::string& s) {
    if (s == "none") return DDOption::None;
    if (s == "any") return DDOption::AnyTwo;
    if (s == "10-11") return DDOption::Hard10or11;
    throw CLI::ValidationError("--dd/--dd-after-split must be none, any, or 10-11");
}

RuleSet make_rules(const CommonOpts& o) {
    RuleSet r;
    r.decks = o.decks;
    r.dealer_hits_soft17 = (o.soft17 == "hit");
    r.dd_option = parse_dd(o.dd);
    r.dd_after_split = parse_dd(o.dd_after_split);
    r.max_hands = o.max_hands;
    r.resplit_aces = o.resplit_aces;
    return r;
}

int parse_rank(std::string tok) {
    for (auto& c : tok) c = std::toupper(static_cast<unsigned char>(c));
    if (tok == "A" || tok == "1") return kAce;
    if (tok == "T" || tok == "10") return kTen;
    if (tok.size() == 1 && tok[0] >= '2' && tok[0] <= '9') return tok[0] - '0';
    throw CLI::ValidationError("bad rank token '" + tok + "' (use A,2..9,T)");
}

std::vector<int> parse_ranks(const std::string& list) {
    std::vector<int> out;
    std::stringstream ss(list);
    std::string tok;
    while (std::getline(ss, tok, ','))
        if (!tok.empty()) out.push_back(parse_rank(tok));
    if (out.empty()) throw CLI::ValidationError("empty rank list");
    return out;
}

std::string rank_name(int r) {
    if (r == kAce) return "A";
    if (r == kTen) return "T";
    return std::string(1, static_cast<char>('0' + r));
}

int effective_depth(const CommonOpts& o, int fallback) {
    if (o.cache_depth >= 0) return o.cache_depth;
    if (o.cache_bytes >= 0) {
        int d = DealerCache::depth_for_budget(o.cache_bytes, false);
        if (d == 0)
            std::cerr << "warning: cache budget below the smallest table; bypassing cache\n";
        return d;
    }
    return fallback;
}

void add_meta_rules(Table& t, const RuleSet& r) {
    t.meta.emplace_back("decks", std::to_string(r.decks));
    t.meta.emplace_back("soft17", r.dealer_hits_soft17 ? "hit" : "stand");
    auto dd_name = [](DDOption d) {
        return d == DDOption::None ? "none" : d == DDOption::AnyTwo ? "any" : "10-11";
    };
    t.meta.emplace_back("dd", dd_name(r.dd_option));
    t.meta.emplace_back("dd-after-split", dd_name(r.dd_after_split));
    t.meta.emplace_back("max-hands", std::to_string(r.max_hands));
    t.meta.emplace_back("resplit-aces", r.resplit_aces ? "yes" : "no");
}

// ------------------------------------------------------------ scheduling ---

// Runs tasks indexed 0..n-1 on a fixed pool; each task writes only its own
// slot, so the merged result is identical for any worker count.
void run_tasks(int n, int workers, const std::function<void(int)>& task) {
    workers = std::max(1, std::min(workers, n));
    if (workers == 1) {
        for (int i = 0; i < n; ++i) task(i);
        return;
    }
    std::vector<std::thread> pool;
    std::mutex mu;
    int next = 0;
    std::exception_ptr err;
    for (int w = 0; w < workers; ++w) {
        pool.emplace_back([&] {
            for (;;) {
                int i;
                {
                    std::lock_guard<std::mutex> lock(mu);
                    if (next >= n || err) return;
                    i = next++;
                }
                try {
                    task(i);
                } catch (...) {
                    std::lock_guard<std::mutex> lock(mu);
                    if (!err) err = std::current_exception();
                    return;
                }
            }
        });
    }
    for (auto& th : pool) th.join();
    if (err) std::rethrow_exception(err);
}

// ---------------------------------------------------------- subcommands ---

int cmd_ev_split(const CommonOpts& o) {
    RuleSet rules = make_rules(o);
    auto pairs = parse_ranks(o.pairs);
    auto ups = parse_ranks(o.ups);
    int depth = effective_depth(o, 14);

    struct Row {
        int up, s;
        SplitResult res;
    };
    std::vector<Row> rows;
    for (int up : ups)
        for (int s : pairs) rows.push_back({up, s, {}});

    run_tasks(static_cast<int>(rows.size()), o.workers, [&](int i) {
        rows[i].res = exact_split_ev(rows[i].up, rows[i].s, rules, depth);
    });

    Table t;
    t.name = "exact split EVs";
    add_meta_rules(t, rules);
    t.meta.emplace_back("cache-depth", std::to_string(depth));
    t.columns = {"pair", "up", "ev", "unique_hands", "generated", "seconds"};
    for (const Row& r : rows)
        t.rows.push_back({rank_name(r.s), rank_name(r.up), fmt_ev(r.res.ev),
                          std::to_string(r.res.unique_hands), std::to_string(r.res.hands_enumerated),
                          fmt(r.res.elapsed, 2)});
    write_table(t, o.format, o.out);
    return 0;
}

int cmd_ev_table(const CommonOpts& o) {
    RuleSet base = make_rules(o);
    auto pairs = parse_ranks(o.pairs);
    auto ups = parse_ranks(o.ups);
    int depth = effective_depth(o, 14);

    struct Row {
        int up, s;
        double nd = 0, dd1 = 0;
    };
    std::vector<Row> rows;
    for (int s : pairs)
        for (int up : ups) rows.push_back({up, s});

    run_tasks(static_cast<int>(rows.size()), o.workers, [&](int i) {
        RuleSet nd = base;
        nd.dd_after_split = DDOption::None;
        RuleSet dd1 = base;
        dd1.dd_after_split = DDOption::AnyTwo;
        rows[i].nd = exact_split_ev(rows[i].up, rows[i].s, nd, depth).ev;
        rows[i].dd1 = exact_split_ev(rows[i].up, rows[i].s, dd1, depth).ev;
    });

    Table t;
    t.name = "split EV table (ND and DD1 columns)";
    add_meta_rules(t, base);
    t.meta.emplace_back("cache-depth", std::to_string(depth));
    t.columns = {"pair", "up", "ev_nd", "ev_dd1"};
    for (const Row& r : rows)
        t.rows.push_back({rank_name(r.s), rank_name(r.up), fmt_ev(r.nd), fmt_ev(r.dd1)});
    write_table(t, o.format, o.out);
    return 0;
}

int cmd_ev_game(const CommonOpts& o, const std::string& source, bool compare_base) {
    RuleSet rules = make_rules(o);
    int depth = effective_depth(o, 12);

    auto make_source = [&]() -> std::unique_ptr<SplitEvSource> {
        if (source == "exact") return std::make_unique<ExactSplitSource>(std::max(depth, 14));
        if (source == "approx") return std::make_unique<ApproxSplitSource>();
        return std::make_unique<HybridSplitSource>();
    };

    auto splits = make_source();
    GameEV g = game_ev(rules, splits.get(), depth);

    Table t;
    t.name = "whole-game EV";
    add_meta_rules(t, rules);
    t.meta.emplace_back("split-source", source);
    t.columns = {"metric", "value"};
    t.rows.push_back({"game_ev_pct", fmt(g.value_pct, 4)});
    t.rows.push_back({"pair_fraction_pct", fmt(100.0 * g.pair_fraction, 2)});
    t.rows.push_back({"favorable_split_fraction_pct", fmt(100.0 * g.favorable_split_fraction, 2)});
    if (compare_base) {
        RuleSet base;
        base.decks = rules.decks;
        base.max_hands = 2;
        auto base_splits = make_source();
        GameEV gb = game_ev(base, base_splits.get(), depth);
        t.rows.push_back({"base_game_ev_pct", fmt(gb.value_pct, 4)});
        t.rows.push_back({"delta_vs_base_pct", fmt(rule_delta(gb, g), 4)});
    }
    write_table(t, o.format, o.out);
    return 0;
}

int cmd_approx_compare(const CommonOpts& o) {
    RuleSet rules = make_rules(o);
    auto pairs = parse_ranks(o.pairs);
    auto ups = parse_ranks(o.ups);
    int depth = effective_depth(o, 14);

    struct Row {
        int up, s;
        double exact = 0, approx = 0, griffin = 0;
    };
    std::vector<Row> rows;
    for (int s : pairs)
        for (int up : ups) rows.push_back({up, s});

    run_tasks(static_cast<int>(rows.size()), o.workers, [&](int i) {
        RuleSet r = SplitEvSource::effective_rules(rows[i].s, rules);
        rows[i].exact = exact_split_ev(rows[i].up, rows[i].s, r, depth).ev;
        if (r.max_hands <= 2) {
            rows[i].approx = approx_nonresplit(rows[i].up, rows[i].s, r);
            rows[i].griffin = rows[i].approx;
        } else {
            rows[i].approx = new_approx_resplit(rows[i].up, rows[i].s, r);
            rows[i].griffin = griffin_resplit(rows[i].up, rows[i].s, r);
        }
    });

    Table t;
    t.name = "approximate vs exact split EVs";
    add_meta_rules(t, rules);
    t.columns = {"pair", "up", "exact", "approx", "approx_err", "griffin", "griffin_err"};
    for (const Row& r : rows)
        t.rows.push_back({rank_name(r.s), rank_name(r.up), fmt_ev(r.exact), fmt_ev(r.approx),
                          fmt_ev(r.approx - r.exact), fmt_ev(r.griffin),
                          fmt_ev(r.griffin - r.exact)});
    write_table(t, o.format, o.out);
    return 0;
}

int cmd_bench(const CommonOpts& o, const std::string& depths_arg, bool compare_engines) {
    RuleSet rules = make_rules(o);
    auto ups = parse_ranks(o.ups);
    auto pairs = parse_ranks(o.pairs);

    std::vector<int> depths;
    if (depths_arg == "sweep") {
        for (int d = 0; d <= 16; d += 2) depths.push_back(d);
    } else {
        std::stringstream ss(depths_arg);
        std::string tok;
        while (std::getline(ss, tok, ',')) depths.push_back(std::stoi(tok));
    }

    Table t;
    t.name = compare_engines ? "engine benchmark (recursive vs hands)" : "dealer cache benchmark";
    add_meta_rules(t, rules);
    if (compare_engines) {
        t.columns = {"up", "pair", "depth", "recursive_s", "hands_s", "speedup"};
    } else {
        t.columns = {"up", "pair", "depth", "seconds", "hits", "misses", "entries"};
    }

    for (int up : ups) {
        for (int s : pairs) {
            for (int d : depths) {
                Shoe shoe = Shoe::fresh(rules.decks);
                shoe.remove(up);
                shoe.remove(s);
                shoe.remove(s);
                shoe.set_baseline();
                DealerCache cache(d);
                std::uint64_t gen = 0;
                HandCatalog catalog = enumerate_unique_hands(shoe, up, s, rules, &gen);
                SplitResult hres = exact_split_hands(shoe, up, s, rules, &cache, catalog);
                if (compare_engines) {
                    DealerCache rcache(d);
                    SplitResult rres = exact_split_recursive(shoe, up, s, rules, &rcache);
                    if (std::abs(rres.ev - hres.ev) > 1e-9)
                        throw std::runtime_error("engine disagreement in bench");
                    t.rows.push_back({rank_name(up), rank_name(s), std::to_string(d),
                                      fmt(rres.elapsed, 3), fmt(hres.elapsed, 3),
                                      fmt(rres.elapsed / std::max(hres.elapsed, 1e-9), 1)});
                } else {
                    t.rows.push_back({rank_name(up), rank_name(s), std::to_string(d),
                                      fmt(hres.elapsed, 3), std::to_string(cache.hits()),
                                      std::to_string(cache.misses()),
                                      std::to_string(cache.filled())});
                }
            }
        }
    }
    write_table(t, o.format, o.out);
    return 0;
}

int cmd_mc(const CommonOpts& o, std::uint64_t trials, std::uint64_t seed) {
    RuleSet rules = make_rules(o);
    auto pairs = parse_ranks(o.pairs);
    auto ups = parse_ranks(o.ups);

    struct Row {
        int up, s;
        McResult res;
    };
    std::vector<Row> rows;
    for (int s : pairs)
        for (int up : ups) rows.push_back({up, s, {}});

    run_tasks(static_cast<int>(rows.size()), o.workers, [&](int i) {
        // stream offset keeps cells independent while staying reproducible
        std::uint64_t cell_seed = seed + 1000003ull * static_cast<std::uint64_t>(i);
        rows[i].res = simulate_split(rows[i].up, rows[i].s, rules, trials, cell_seed);
    });

    Table t;
    t.name = "Monte Carlo split EVs";
    add_meta_rules(t, rules);
    t.meta.emplace_back("trials", std::to_string(trials));
    t.meta.emplace_back("seed", std::to_string(seed));
    t.columns = {"pair", "up", "mean", "stderr"};
    for (const Row& r : rows)
        t.rows.push_back(
            {rank_name(r.s), rank_name(r.up), fmt_ev(r.res.mean), fmt(r.res.stderr_, 6)});
    write_table(t, o.format, o.out);
    return 0;
}

int cmd_strategy_dump(const CommonOpts& o) {
    RuleSet rules = make_rules(o);
    Table t;
    t.name = "zero-memory strategy chart (S stand, H hit, D double)";
    add_meta_rules(t, rules);
    t.columns = {"hand"};
    for (int up = 1; up <= 10; ++up) t.columns.push_back("vs " + rank_name(up));

    auto action_char = [](Action a) {
        return a == Action::Stand ? "S" : a == Action::Hit ? "H" : "D";
    };
    for (int total = 5; total <= 21; ++total) {
        // representative two-card hard composition (no aces)
        int c1 = std::min(kTen, total - 2);
        int c2 = total - c1;
        if (c2 < 2 || c2 > 10) continue;
        Hand h(c1);
        h.add(c2);
        std::vector<std::string> row{"hard " + std::to_string(total)};
        for (int up = 1; up <= 10; ++up) row.push_back(action_char(play_action(h, up, rules)));
        t.rows.push_back(std::move(row));
    }
    for (int kick = 2; kick <= 9; ++kick) {
        Hand h(kAce);
        h.add(kick);
        std::vector<std::string> row{"soft " + std::to_string(11 + kick)};
        for (int up = 1; up <= 10; ++up) row.push_back(action_char(play_action(h, up, rules)));
        t.rows.push_back(std::move(row));
    }
    write_table(t, o.format, o.out);
    return 0;
}

int cmd_dealer_dump(const CommonOpts& o) {
    RuleSet rules = make_rules(o);
    auto ups = parse_ranks(o.ups);
    Table t;
    t.name = "dealer outcome distribution (conditioned on no natural)";
    add_meta_rules(t, rules);
    t.columns = {"up", "p17", "p18", "p19", "p20", "p21", "pbust"};
    for (int up : ups) {
        Shoe shoe = Shoe::fresh(rules.decks);
        shoe.remove(up);
        DealerDist d = dealer_distribution(shoe, up, rules);
        t.rows.push_back({rank_name(up), fmt(d.d[0]), fmt(d.d[1]), fmt(d.d[2]), fmt(d.d[3]),
                          fmt(d.d[4]), fmt(d.d[5])});
    }
    write_table(t, o.format, o.out);
    return 0;
}

int cmd_precision_sweep(const CommonOpts& o, int min_digits, int max_digits) {
    RuleSet rules = make_rules(o);
    ApproxSplitSource splits;
    GameEV g = game_ev(rules, &splits, effective_depth(o, 12));
    Table t;
    t.name = "game EV vs table precision";
    add_meta_rules(t, rules);
    t.columns = {"digits", "game_ev_pct", "error_pct"};
    for (const PrecisionPoint& p : precision_sweep(g, min_digits, max_digits))
        t.rows.push_back(
            {std::to_string(p.digits), fmt(p.value_pct, 6), fmt(p.value_pct - g.value_pct, 6)});
    write_table(t, o.format, o.out);
    return 0;
}

void add_common(CLI::App* cmd, CommonOpts& o) {
    cmd->add_option("--decks", o.decks, "number of decks")->check(CLI::Range(1, 8));
    cmd->add_option("--soft17", o.soft17, "dealer soft-17 rule")
        ->check(CLI::IsMember({"stand", "hit"}));
    cmd->add_option("--dd", o.dd, "doubling rule for ordinary hands")
        ->check(CLI::IsMember({"none", "any", "10-11"}));
    cmd->add_option("--dd-after-split", o.dd_after_split, "doubling rule after splits")
        ->check(CLI::IsMember({"none", "any", "10-11"}));
    cmd->add_option("--max-hands", o.max_hands, "maximum split hands h")->check(CLI::Range(1, 4));
    cmd->add_flag("--resplit-aces", o.resplit_aces, "allow resplitting aces");
    cmd->add_option("--pairs", o.pairs, "comma list of pair ranks (A,2..9,T)");
    cmd->add_option("--ups", o.ups, "comma list of dealer up cards");
    cmd->add_option("--cache-depth", o.cache_depth, "dealer cache depth j");
    cmd->add_option("--cache-bytes", o.cache_bytes, "dealer cache budget in bytes");
    cmd->add_option("--workers", o.workers, "worker thread count")->check(CLI::Range(1, 64));
    cmd->add_option("--format", o.format, "output format")
        ->check(CLI::IsMember({"csv", "json", "markdown"}));
    cmd->add_option("--out", o.out, "write output to this path instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"exact and approximate blackjack pair-splitting EVs"};
    app.require_subcommand(1);

    CommonOpts o;
    std::string game_source = "hybrid";
    bool compare_base = false;
    std::string bench_depths = "sweep";
    bool bench_engines = false;
    std::uint64_t trials = 1000000, seed = 1;
    int min_digits = 2, max_digits = 8;

    add_common(app.add_subcommand("ev-split", "exact split EV for selected cells"), o);
    add_common(app.add_subcommand("ev-table", "ND/DD1 split EV table"), o);
    auto* game = app.add_subcommand("ev-game", "whole-game basic-strategy EV");
    add_common(game, o);
    game->add_option("--source", game_source, "split EV source")
        ->check(CLI::IsMember({"exact", "approx", "hybrid"}));
    game->add_flag("--compare-base", compare_base, "also report delta vs the default rule set");
    add_common(app.add_subcommand("approx-compare", "approximations vs exact"), o);
    auto* bench = app.add_subcommand("bench", "cache and engine benchmarks");
    add_common(bench, o);
    bench->add_option("--depths", bench_depths, "comma list of cache depths, or 'sweep'");
    bench->add_flag("--engines", bench_engines, "time recursive vs hands-list engines");
    auto* mc = app.add_subcommand("mc", "Monte Carlo check of split EVs");
    add_common(mc, o);
    mc->add_option("--trials", trials, "trials per cell");
    mc->add_option("--seed", seed, "random seed");
    add_common(app.add_subcommand("strategy-dump", "print the strategy chart"), o);
    add_common(app.add_subcommand("dealer-dump", "print dealer outcome distributions"), o);
    auto* prec = app.add_subcommand("precision-sweep", "game EV vs rounded table precision");
    add_common(prec, o);
    prec->add_option("--min-digits", min_digits, "lowest precision");
    prec->add_option("--max-digits", max_digits, "highest precision");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }

    try {
        if (app.got_subcommand("ev-split")) return cmd_ev_split(o);
        if (app.got_subcommand("ev-table")) return cmd_ev_table(o);
        if (app.got_subcommand("ev-game")) return cmd_ev_game(o, game_source, compare_base);
        if (app.got_subcommand("approx-compare")) return cmd_approx_compare(o);
        if (app.got_subcommand("bench")) return cmd_bench(o, bench_depths, bench_engines);
        if (app.got_subcommand("mc")) return cmd_mc(o, trials, seed);
        if (app.got_subcommand("strategy-dump")) return cmd_strategy_dump(o);
        if (app.got_subcommand("dealer-dump")) return cmd_dealer_dump(o);
        if (app.got_subcommand("precision-sweep")) return cmd_precision_sweep(o, min_digits, max_digits);
    } catch (const CLI::ParseError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
    return 2;
}
