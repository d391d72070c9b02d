#pragma once

#include <CLI11.hpp>

#include <algorithm>
#include <charconv>
#include <chrono>
#include <cmath>
#include <fstream>
#include <iterator>
#include <map>
#include <memory>
#include <optional>
#include <ostream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gapidx/gapidx.hpp"

namespace gapidx::cli {

enum exit_code : int { kOk = 0, kUsage = 2, kData = 3 };

enum class Mode { exists, count, report };

struct ScriptQuery {
    Mode mode = Mode::exists;
    std::string p1, p2;
    std::int64_t alpha = 0;
    std::int64_t beta = 0;
};

inline std::string read_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io, "cannot open " + path);
    return {std::istreambuf_iterator<char>(in), std::istreambuf_iterator<char>()};
}

inline Mode parse_mode(std::string_view s) {
    if (s == "exists") return Mode::exists;
    if (s == "count") return Mode::count;
    if (s == "report") return Mode::report;
    throw error(errc::format, "unknown mode '" + std::string(s) + "'");
}

inline const char* mode_name(Mode m) {
    switch (m) {
    case Mode::exists: return "exists";
    case Mode::count: return "count";
    case Mode::report: return "report";
    }
    return "?";
}

inline std::int64_t parse_distance(std::string_view s) {
    std::int64_t v = 0;
    auto [end, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
    if (ec != std::errc{} || end != s.data() + s.size() || v < 0) {
        throw error(errc::format, "'" + std::string(s) + "' is not a non-negative decimal");
    }
    return v;
}

/// Lines of mode<TAB>p1<TAB>p2<TAB>alpha<TAB>beta; blank lines are skipped.
inline std::vector<ScriptQuery> parse_script(const std::string& body) {
    std::vector<ScriptQuery> out;
    std::istringstream in(body);
    std::size_t line_no = 0;
    for (std::string line; std::getline(in, line);) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        if (line.empty()) continue;
        std::vector<std::string> fields;
        std::size_t start = 0;
        while (true) {
            const auto tab = line.find('\t', start);
            fields.push_back(line.substr(start, tab == std::string::npos ? std::string::npos : tab - start));
            if (tab == std::string::npos) break;
            start = tab + 1;
        }
        try {
            if (fields.size() != 5) throw error(errc::format, "expected 5 tab-separated fields");
            ScriptQuery q;
            q.mode = parse_mode(fields[0]);
            q.p1 = fields[1];
            q.p2 = fields[2];
            require_pattern(q.p1);
            require_pattern(q.p2);
            q.alpha = parse_distance(fields[3]);
            q.beta = parse_distance(fields[4]);
            out.push_back(std::move(q));
        } catch (const error& e) {
            throw error(e.code(), "script line " + std::to_string(line_no) + ": " + e.detail());
        }
    }
    return out;
}

inline std::string format_pairs(const PairList& pairs) {
    std::string s;
    for (const auto& p : pairs) {
        if (!s.empty()) s += ' ';
        s += std::to_string(p.i) + ',' + std::to_string(p.j);
    }
    return s;
}

/// Answer of one query plus the number of range-successor calls it made.
struct Answer {
    std::string line;
    std::int64_t occ = 0;
    std::uint64_t ors_calls = 0;
};

inline Answer answer_with_oracle(std::string_view text, const ScriptQuery& q) {
    auto r = oracle::query(text, q.p1, q.p2, q.alpha, q.beta);
    switch (q.mode) {
    case Mode::exists: return {r.exists ? "yes" : "no", r.exists ? 1 : 0, 0};
    case Mode::count: return {std::to_string(r.count), r.count, 0};
    case Mode::report: return {format_pairs(r.pairs), r.count, 0};
    }
    return {};
}

inline Answer answer_with_index(const AnyIndex& idx, const ScriptQuery& q) {
    return std::visit(
        [&](const auto& x) -> Answer {
            using T = std::decay_t<decltype(x)>;
            const auto before = x.ors().query_count();
            Answer a;
            if constexpr (std::is_same_v<T, ZeroBetaIndex>) {
                if (q.alpha > 1) throw error(errc::unsupported, "a zero-beta index needs alpha <= 1");
            }
            switch (q.mode) {
            case Mode::exists: {
                bool yes;
                if constexpr (std::is_same_v<T, ZeroBetaIndex>) yes = x.exists(q.p1, q.p2, q.beta);
                else yes = x.exists(q.p1, q.p2, q.alpha, q.beta);
                a.line = yes ? "yes" : "no";
                a.occ = yes ? 1 : 0;
                break;
            }
            case Mode::count: {
                if constexpr (std::is_same_v<T, ZeroBetaIndex>) a.occ = x.count(q.p1, q.p2, q.beta);
                else a.occ = x.count(q.p1, q.p2, q.alpha, q.beta);
                a.line = std::to_string(a.occ);
                break;
            }
            case Mode::report: {
                PairList pairs;
                if constexpr (std::is_same_v<T, CountIndex>) {
                    throw error(errc::unsupported, "a count index cannot report; build with --kind report");
                } else if constexpr (std::is_same_v<T, ZeroBetaIndex>) {
                    pairs = x.report(q.p1, q.p2, q.beta);
                } else {
                    pairs = x.report(q.p1, q.p2, q.alpha, q.beta);
                }
                a.line = format_pairs(pairs);
                a.occ = static_cast<std::int64_t>(pairs.size());
                break;
            }
            }
            a.ors_calls = x.ors().query_count() - before;
            return a;
        },
        idx);
}

inline std::optional<IndexKind> parse_kind(std::string_view s) {
    if (s == "count") return IndexKind::count;
    if (s == "report") return IndexKind::report;
    if (s == "zero-beta") return IndexKind::zero_beta;
    return std::nullopt;
}

inline AnyIndex build_any(IndexKind kind, std::string text, std::optional<std::int64_t> tau,
                          DecompositionOptions opt) {
    switch (kind) {
    case IndexKind::count: return CountIndex::build(Text(std::move(text)), tau);
    case IndexKind::report: return ReportIndex::build(Text(std::move(text)), opt);
    case IndexKind::zero_beta: return ZeroBetaIndex::build(Text(std::move(text)), opt);
    }
    throw error(errc::unsupported, "unknown kind");
}

inline AnyIndex load_index_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw error(errc::io, "cannot open " + path);
    return load_index(in);
}

inline void save_index_file(const std::string& path, const AnyIndex& idx) {
    std::ofstream out(path, std::ios::binary | std::ios::trunc);
    if (!out) throw error(errc::io, "cannot write " + path);
    save_index(out, idx);
}

/// Least-squares slope of log(y) against log(x).
inline double loglog_slope(const std::vector<std::pair<double, double>>& pts) {
    double sx = 0, sy = 0, sxx = 0, sxy = 0;
    for (auto [x, y] : pts) {
        const double lx = std::log(x), ly = std::log(std::max(y, 1.0));
        sx += lx;
        sy += ly;
        sxx += lx * lx;
        sxy += lx * ly;
    }
    const double k = static_cast<double>(pts.size());
    const double den = k * sxx - sx * sx;
    return den == 0 ? 0.0 : (k * sxy - sx * sy) / den;
}

struct QueryFlags {
    std::string script;
    std::string mode;
    std::string p1, p2;
    std::int64_t alpha = 0;
    std::int64_t beta = 0;
    bool have_beta = false;
};

inline void add_query_flags(CLI::App* cmd, QueryFlags& f) {
    cmd->add_option("--script", f.script, "query script: mode<TAB>p1<TAB>p2<TAB>alpha<TAB>beta per line");
    cmd->add_option("--mode", f.mode, "exists, count or report")->check(CLI::IsMember({"exists", "count", "report"}));
    cmd->add_option("--p1", f.p1, "first pattern");
    cmd->add_option("--p2", f.p2, "second pattern");
    cmd->add_option("--alpha", f.alpha, "smallest distance")->check(CLI::NonNegativeNumber);
    cmd->add_option("--beta", f.beta, "largest distance")->check(CLI::NonNegativeNumber);
}

/// Script queries, or the single query described by the flags.
inline std::vector<ScriptQuery> collect_queries(const QueryFlags& f, CLI::App* cmd) {
    const bool single = !f.mode.empty() || !f.p1.empty() || !f.p2.empty();
    if (!f.script.empty()) {
        if (single) throw CLI::ValidationError("--script cannot be combined with single-query flags");
        return parse_script(read_file(f.script));
    }
    if (f.mode.empty() || f.p1.empty() || f.p2.empty() || cmd->count("--beta") == 0) {
        throw CLI::RequiredError("--script, or all of --mode --p1 --p2 --beta");
    }
    return {ScriptQuery{parse_mode(f.mode), f.p1, f.p2, f.alpha, f.beta}};
}

inline std::string random_bench_text(std::mt19937_64& rng, std::size_t n, int sigma) {
    std::uniform_int_distribution<int> d(0, sigma - 1);
    std::string s(n, 'a');
    for (auto& c : s) c = static_cast<char>('a' + d(rng));
    return s;
}

/// Runs the command line in-process. Usage errors exit 2, data errors 3.
inline int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Gapped consecutive-occurrence index"};
    app.require_subcommand(1);

    std::string text_path, out_path, kind_name = "count";
    std::int64_t tau = 0;
    std::int64_t small_cutoff = DecompositionOptions{}.small_cutoff;
    auto* build = app.add_subcommand("build", "build an index over a text file and save it");
    build->add_option("text", text_path, "text file (raw bytes)")->required();
    build->add_option("out", out_path, "index file to write")->required();
    build->add_option("--kind", kind_name, "count, report or zero-beta")
        ->check(CLI::IsMember({"count", "report", "zero-beta"}));
    build->add_option("--tau", tau, "cluster size for a count index")->check(CLI::PositiveNumber);
    build->add_option("--small-cutoff", small_cutoff, "largest interval answered without its own tree")
        ->check(CLI::NonNegativeNumber);

    std::string index_path;
    QueryFlags qf;
    bool stats = false;
    auto* query = app.add_subcommand("query", "answer queries from a saved index");
    query->add_option("index", index_path, "index file")->required();
    add_query_flags(query, qf);
    query->add_flag("--stats", stats, "print ors_calls=K after each answer");

    std::string oracle_text;
    QueryFlags of;
    auto* orc = app.add_subcommand("oracle", "answer queries by brute force over a text file");
    orc->add_option("text", oracle_text, "text file")->required();
    add_query_flags(orc, of);

    std::string bench_script;
    std::vector<std::string> bench_texts;
    std::vector<std::int64_t> gen_sizes;
    std::uint64_t seed = 1;
    int sigma = 4;
    std::string bench_kind = "auto";
    auto* bench = app.add_subcommand("bench", "time a script over texts and fit cost exponents");
    bench->add_option("script", bench_script, "query script")->required();
    bench->add_option("texts", bench_texts, "text files");
    bench->add_option("--gen", gen_sizes, "also run on random texts of these lengths")->delimiter(',');
    bench->add_option("--seed", seed, "seed for generated texts");
    bench->add_option("--sigma", sigma, "alphabet size for generated texts")->check(CLI::Range(1, 26));
    bench->add_option("--kind", bench_kind, "auto, report or zero-beta")
        ->check(CLI::IsMember({"auto", "report", "zero-beta"}));

    std::string sets_path;
    std::vector<std::string> pair_args;
    bool verify = false;
    auto* sdj = app.add_subcommand("sdj", "set disjointness through the gap index");
    sdj->add_option("sets", sets_path, "set file: one set per line")->required();
    sdj->add_option("--pair", pair_args, "pair of 1-based set ids as i,j; default all pairs");
    sdj->add_flag("--verify", verify, "cross-check against direct intersection");

    std::vector<const char*> argv{"gapidx"};
    for (const auto& a : args) argv.push_back(a.c_str());
    try {
        app.parse(static_cast<int>(argv.size()), argv.data());

        if (*build) {
            if (tau != 0 && kind_name != "count") throw CLI::ValidationError("--tau applies to count indexes only");
            const auto kind = *parse_kind(kind_name);
            DecompositionOptions opt;
            opt.small_cutoff = small_cutoff;
            auto text = read_file(text_path);
            const auto t0 = std::chrono::steady_clock::now();
            auto idx = build_any(kind, std::move(text), tau ? std::optional<std::int64_t>(tau) : std::nullopt, opt);
            const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
            save_index_file(out_path, idx);
            out << "kind=" << kind_name << '\n';
            std::visit(
                [&](const auto& x) {
                    using T = std::decay_t<decltype(x)>;
                    out << "n=" << x.n() << '\n';
                    if constexpr (std::is_same_v<T, CountIndex>) {
                        out << "tau=" << x.tau() << '\n' << "table_entries=" << x.tables().entry_count() << '\n';
                    } else {
                        const auto& root = x.decomposition().tree_of(x.decomposition().root());
                        out << "tau=" << root.cp.tau() << '\n'
                            << "table_entries=" << x.decomposition().table_entries() << '\n'
                            << "depth=" << x.decomposition().depth() << '\n';
                    }
                },
                idx);
            out << "build_seconds=" << secs << '\n';
            return kOk;
        }

        if (*query) {
            auto qs = collect_queries(qf, query);
            auto idx = load_index_file(index_path);
            for (const auto& q : qs) {
                auto a = answer_with_index(idx, q);
                out << a.line << '\n';
                if (stats) out << "ors_calls=" << a.ors_calls << '\n';
            }
            return kOk;
        }

        if (*orc) {
            auto qs = collect_queries(of, orc);
            const auto text = read_file(oracle_text);
            for (const auto& q : qs) out << answer_with_oracle(text, q).line << '\n';
            return kOk;
        }

        if (*bench) {
            const auto qs = parse_script(read_file(bench_script));
            std::vector<std::string> texts;
            for (const auto& p : bench_texts) texts.push_back(read_file(p));
            std::mt19937_64 rng(seed);
            for (auto n : gen_sizes) texts.push_back(random_bench_text(rng, static_cast<std::size_t>(n), sigma));
            out << "mode,n,occ,wall,ors_calls\n";
            std::map<std::string, std::map<std::int64_t, std::pair<double, int>>> per_mode;
            const bool wants_report =
                std::any_of(qs.begin(), qs.end(), [](const ScriptQuery& q) { return q.mode == Mode::report; });
            for (auto& text : texts) {
                if (qs.empty()) break;
                std::vector<AnyIndex> idx;
                if (bench_kind == "zero-beta") {
                    idx.push_back(ZeroBetaIndex::build(Text(text)));
                } else {
                    idx.push_back(CountIndex::build(Text(text)));
                    if (wants_report || bench_kind == "report") idx.push_back(ReportIndex::build(Text(text)));
                }
                const auto n = static_cast<std::int64_t>(text.size());
                for (const auto& q : qs) {
                    const auto& target = q.mode == Mode::report || bench_kind == "report" ? idx.back() : idx.front();
                    const auto t0 = std::chrono::steady_clock::now();
                    auto a = answer_with_index(target, q);
                    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
                    out << mode_name(q.mode) << ',' << n << ',' << a.occ << ',' << secs << ',' << a.ors_calls << '\n';
                    auto& cell = per_mode[mode_name(q.mode)][n];
                    cell.first += static_cast<double>(a.ors_calls);
                    cell.second += 1;
                }
            }
            for (const auto& [mode, by_n] : per_mode) {
                if (by_n.size() < 2) continue;
                std::vector<std::pair<double, double>> pts;
                for (const auto& [n, cell] : by_n) pts.emplace_back(static_cast<double>(n), cell.first / cell.second);
                out << "# exponent," << mode << ',' << loglog_slope(pts) << '\n';
            }
            return kOk;
        }

        if (*sdj) {
            std::ifstream in(sets_path);
            if (!in) throw error(errc::io, "cannot open " + sets_path);
            const auto sys = SetSystem::parse(in);
            const auto m = static_cast<std::int64_t>(sys.sets.size());
            std::vector<std::pair<std::int64_t, std::int64_t>> pairs;
            for (const auto& p : pair_args) {
                const auto comma = p.find(',');
                if (comma == std::string::npos) throw CLI::ValidationError("--pair expects i,j");
                const auto i = parse_distance(p.substr(0, comma)), j = parse_distance(p.substr(comma + 1));
                if (i < 1 || j < 1 || i > m || j > m || i == j) {
                    throw error(errc::bad_range,
                                "pair " + p + " does not name two distinct sets in 1.." + std::to_string(m));
                }
                pairs.emplace_back(i, j);
            }
            if (pair_args.empty()) {
                for (std::int64_t i = 1; i <= m; ++i) {
                    for (std::int64_t j = i + 1; j <= m; ++j) pairs.emplace_back(i, j);
                }
            }
            SetDisjointnessIndex sdi(sys);
            std::int64_t mismatches = 0;
            for (auto [i, j] : pairs) {
                const bool dis = sdi.disjoint(i - 1, j - 1);
                out << i << ' ' << j << ' ' << (dis ? "disjoint" : "intersecting") << '\n';
                if (verify) {
                    const auto& a = sys.sets[i - 1];
                    const auto& b = sys.sets[j - 1];
                    std::vector<std::int64_t> both;
                    std::set_intersection(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(both));
                    mismatches += both.empty() != dis ? 1 : 0;
                }
            }
            if (verify) out << "mismatches=" << mismatches << '\n';
            return mismatches == 0 ? kOk : kData;
        }
    } catch (const CLI::Success& e) {
        return app.exit(e, out, err);
    } catch (const CLI::Error& e) {
        app.exit(e, out, err);
        return kUsage;
    } catch (const error& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return kData;
    }
    return kUsage;
}

}  // namespace gapidx::cli
