// Acceptance run: one PASS/FAIL line per criterion, with its wall time against the limit.

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <set>
#include <sstream>
#include <string>

#include "corpus.hpp"
#include "fsg_search.hpp"
#include "msc/errors.hpp"
#include "msc/eval.hpp"
#include "msc/forest.hpp"
#include "msc/games.hpp"
#include "msc/mcl.hpp"
#include "msc/nnf.hpp"
#include "msc/reductions.hpp"
#include "msc/textio.hpp"
#include "msc/tmbridge.hpp"

using namespace msc;

namespace {

struct Result {
    bool ok = true;
    std::ostringstream detail;

    void expect(bool cond, const std::string& what)
    {
        if (!cond && ok) {
            ok = false;
            detail << "first failure: " << what << "; ";
        }
    }
};

int failures = 0;
std::set<int> selected;  // empty: every criterion

void criterion(int id, const std::string& name, double limit_ms, const std::function<void(Result&)>& body)
{
    if (!selected.empty() && !selected.count(id))
        return;
    Result r;
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(r);
    } catch (const std::exception& e) {
        r.ok = false;
        r.detail << "exception: " << e.what();
    }
    const double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    const bool in_time = ms < limit_ms;
    const bool pass = r.ok && in_time;
    failures += !pass;
    std::printf("%s %2d %s (%.1f ms, limit %.0f ms)%s %s\n", pass ? "PASS" : "FAIL", id, name.c_str(), ms, limit_ms,
                in_time ? "" : " over time", r.detail.str().c_str());
    std::fflush(stdout);
}

std::string data(const std::string& name) { return std::string(MSC_TEST_DATA) + "/" + name; }

bool same_outcome(const TmResult& r, const Verdict& v)
{
    return (r.kind == TmResult::Kind::Accept) == (v.kind == Verdict::Kind::Accepted) &&
           (r.kind == TmResult::Kind::Reject) == (v.kind == Verdict::Kind::Rejected);
}

Program without_rejecting(Program p)
{
    p.rejecting.clear();
    return p;
}

const char* kTwoPredicates = "program GMSC\naccept X\nX(0) := !p\nX := Y & <2>X\nY(0) := r | q\nY := [3]!Y\n";
const char* kCentre = "program MSC\naccept X\nX(0) := []F\nX := <>X & []X\n";

// X: Y & Z, Y: <>X, Z: X | Y.
const char* kGamma = "program MSC async\naccept X\nX(0) := p\nX := Y & Z\nY(0) := q\nY := <>X\nZ(0) := r\nZ := X | Y\n";

// Every circuit over x0, x1 with up to two non-input gates; the last gate is the output.
std::vector<Circuit> small_circuits()
{
    std::vector<Circuit> out;
    std::function<void(Circuit, int)> grow = [&](Circuit c, int left) {
        // The output must be the only gate nobody reads.
        std::vector<bool> read(c.gates.size(), false);
        for (const auto& g : c.gates)
            for (int x : g.inputs)
                read[static_cast<std::size_t>(x)] = true;
        const bool single_sink = std::count(read.begin(), read.end() - 1, false) == 0;
        if (c.gates.back().kind != Gate::Kind::Input && single_sink) {
            c.output = static_cast<int>(c.gates.size()) - 1;
            out.push_back(c);
        }
        if (left == 0)
            return;
        const int avail = static_cast<int>(c.gates.size());
        const std::string name = "g" + std::to_string(avail);
        for (int a = 0; a < avail; ++a)
            grow([&] { Circuit d = c; d.gates.push_back(Gate{name, Gate::Kind::Not, "", {a}}); return d; }(), left - 1);
        for (auto kind : {Gate::Kind::And, Gate::Kind::Or})
            for (int mask = 1; mask < (1 << avail); ++mask) {
                Gate g{name, kind, "", {}};
                for (int a = 0; a < avail; ++a)
                    if (mask & (1 << a))
                        g.inputs.push_back(a);
                Circuit d = c;
                d.gates.push_back(g);
                grow(d, left - 1);
            }
    };
    for (int ni : {1, 2}) {
        Circuit c;
        for (int i = 0; i < ni; ++i)
            c.gates.push_back(Gate{"i" + std::to_string(i), Gate::Kind::Input, "x" + std::to_string(i), {}});
        grow(c, 2);
    }
    return out;
}

}  // namespace

// Criterion numbers given on the command line restrict the run to those.
int main(int argc, char** argv)
{
    for (int i = 1; i < argc; ++i)
        selected.insert(std::atoi(argv[i]));
    criterion(1, "program size of the two-predicate example is 19", 1.0, [](Result& r) {
        const Program p = parse_program(kTwoPredicates);
        r.expect(program_size(p) == 19, "program_size");
        r.expect(forest_size(syntax_forest(p)) == 19, "forest_size");
    });

    criterion(2, "standard game agrees with the run", 60000.0, [](Result& r) {
        corpus::Rng rng(1001);
        corpus::ProgramShape shape;
        int pairs = 0, accepted = 0;
        for (; pairs < 500; ++pairs) {
            const Program p = corpus::random_program(rng, shape);
            const PointedModel pm = corpus::random_model(rng, 4, shape.props);
            const Program acc = without_rejecting(p);
            const Verdict v = run(acc, pm);
            const GameOutcome o = solve_standard_game(p, pm);
            r.expect((o.winner == Winner::Eloise) == v.accepted(), "game winner vs run, pair " + std::to_string(pairs));
            if (v.accepted()) {
                ++accepted;
                r.expect(o.initial_clock == v.round, "initial clock");
                const int K = static_cast<int>(v.round);
                r.expect(solve_standard_game_bounded(acc, pm, K).winner == Winner::Eloise, "bounded at the round");
                if (K > 0)
                    r.expect(solve_standard_game_bounded(acc, pm, K - 1).winner == Winner::Abelard,
                             "bounded below the round");
            } else {
                const int K = static_cast<int>(v.preperiod + v.period);
                r.expect(solve_standard_game_bounded(acc, pm, K).winner == Winner::Abelard, "bounded, never accepts");
            }
        }
        r.detail << pairs << " pairs, " << accepted << " accepted";
    });

    criterion(3, "global game strategy exists iff the run accepts", 120000.0, [](Result& r) {
        corpus::Rng rng(1003);
        corpus::ProgramShape shape;
        shape.global = true;
        int pairs = 0, strategies = 0;
        for (; pairs < 300; ++pairs) {
            const Program p = corpus::random_program(rng, shape);
            const PointedModel pm = corpus::random_model(rng, 4, shape.props);
            const bool acc = run(without_rejecting(p), pm).accepted();
            const auto s = global_game_eloise_strategy(p, pm);
            r.expect(s.has_value() == acc, "strategy vs run, pair " + std::to_string(pairs));
            if (s) {
                ++strategies;
                r.expect(global_strategy_survives(p, pm, *s), "strategy survives every challenge");
            }
        }
        r.detail << pairs << " pairs, " << strategies << " strategies";
    });

    criterion(4, "MCL translation of asynchronous programs", 60000.0, [](Result& r) {
        corpus::Rng rng(1004);
        corpus::ProgramShape shape;
        shape.semantics = Semantics::Async;
        shape.with_rejecting = false;
        int pairs = 0;
        for (int i = 0; i < 200; ++i) {
            const Program p = corpus::random_program(rng, shape);
            const Mcl f = translate_async_program(p);
            r.expect(dangling_claims(f).empty(), "translation has a dangling claim");
            for (int j = 0; j < 3; ++j, ++pairs) {
                const PointedModel pm = corpus::random_model(rng, 3, shape.props);
                r.expect((solve_mcl_game(pm, f) == Winner::Eloise) ==
                             (solve_async_game(p, pm).winner == Winner::Eloise),
                         "MCL game vs asynchronous game");
            }
        }
        const Program g = parse_program(kGamma);
        const auto naive = dangling_claims(naive_translate(g));
        r.expect(!naive.empty(), "naive translation of the cyclic program should dangle");
        r.expect(dangling_claims(translate_async_program(g)).empty(), "translation of the cyclic program");
        r.detail << pairs << " pairs, naive translation leaves " << naive.size() << " dangling claims";
    });

    criterion(5, "machines and programs simulate each other", 120000.0, [](Result& r) {
        int words = 0;
        for (const char* name : {"even_a.tm", "mark_back.tm", "bounce_b.tm"}) {
            const BoundedTm t = parse_tm(read_text_file(data(name)), name);
            const Program p = compile_tm_to_msc(t);
            for (const auto& w : corpus::all_words(t.input, 4)) {
                ++words;
                const PointedModel pm = extended_word_model(w, t.bound);
                r.expect(same_outcome(run_tm(t, w), run(p, pm, 1000000)), std::string(name) + " verdict");
                const auto steps = tm_trace(t, w, 60);
                const auto rounds = trace_run(p, pm.model, static_cast<long>(steps.size()) - 1);
                for (std::size_t i = 0; i < steps.size(); ++i) {
                    const auto c = decode_tm_config(t, p, rounds[i]);
                    r.expect(c.has_value() && *c == steps[i], std::string(name) + " lockstep");
                }
            }
        }
        const char* programs[] = {
            "program MSC\naccept X\nX(0) := []F\nX := <>X & []X\n",
            "program MSC\naccept Y\nY(0) := a\nY := Y | <>Y\n",
            "program MSC\naccept A\nreject B\nA(0) := F\nA := <>(p_right & C)\nB(0) := b\nB := B\nC(0) := a\nC := <>C\n",
        };
        for (const char* text : programs) {
            const Program p = parse_program(text);
            const Program f = flatten(p);
            r.expect(is_flat(f), "flatten");
            for (int k : {0, 1}) {
                const BoundedTm t = compile_program_to_tm(f, k, {"a", "b"});
                for (const auto& w : corpus::all_words({"a", "b"}, 3)) {
                    ++words;
                    const Verdict v = k_accepts(p, w, k);
                    r.expect(v.kind == k_accepts(f, w, k).kind, "flattened program verdict");
                    r.expect(same_outcome(run_tm(t, w), v), "compiled machine verdict");
                }
            }
        }
        r.detail << words << " words";
    });

    criterion(6, "QBF evaluation, QBF machine and program pipeline agree", 600000.0, [](Result& r) {
        std::vector<Qbf> qs = corpus::exhaustive_qbfs();
        const std::size_t exhaustive = qs.size();
        corpus::Rng rng(1006);
        for (int i = 0; i < 50; ++i)
            qs.push_back(corpus::random_qbf(rng, 3, 3));
        int truths = 0;
        for (const Qbf& q : qs) {
            const bool expect = eval_qbf(q);
            truths += expect;
            const TmResult m = run_tm(qbf_machine(), qbf_word(q));
            r.expect(m.kind == (expect ? TmResult::Kind::Accept : TmResult::Kind::Reject),
                     "machine on " + serialize_qbf(q));
            r.expect(qbf_to_msc_pipeline(q) == expect, "pipeline on " + serialize_qbf(q));
        }
        r.expect(exhaustive == 1584, "exhaustive set has " + std::to_string(exhaustive) + " formulas");
        r.detail << exhaustive << " exhaustive + 50 random, " << truths << " true";
    });

    criterion(7, "circuits and asynchronous SC programs agree", 30000.0, [](Result& r) {
        corpus::Rng rng(1007);
        long checks = 0;
        for (int i = 0; i < 100; ++i) {
            const Circuit c = corpus::random_circuit(rng, 3, 8);
            for (const auto& bits : corpus::all_bit_vectors(static_cast<int>(c.input_vars().size()))) {
                ++checks;
                r.expect(circuit_async_accepts(c, bits) == eval_circuit(c, bits), "random circuit");
            }
        }
        const auto small = small_circuits();
        for (const Circuit& c : small)
            for (const auto& bits : corpus::all_bit_vectors(static_cast<int>(c.input_vars().size()))) {
                ++checks;
                r.expect(circuit_async_accepts(c, bits) == eval_circuit(c, bits), "small circuit");
            }
        r.detail << checks << " evaluations, " << small.size() << " exhaustive circuits";
    });

    criterion(8, "fixed-length words reduce to SC", 30000.0, [](Result& r) {
        const Program p = parse_program(kCentre);
        const int n = 3;
        const Program sc = msc_word_to_sc(p, n);
        r.expect(sc.fragment == Fragment::SC, "result is SC");
        const int bound = 3 * n * program_size(p);
        r.expect(program_size(sc) <= bound, "size bound");
        for (const auto& w : corpus::all_words({"a", "b"}, n, n))
            r.expect(run(sc, word_to_sc_model(p, w)).kind == k_accepts(p, w, 0).kind, "verdict");
        char buf[64];
        std::snprintf(buf, sizeof buf, "%.2f", static_cast<double>(program_size(sc)) / (n * program_size(p)));
        r.detail << "|SC| = " << program_size(sc) << " <= " << bound << ", constant " << buf;
    });

    criterion(9, "strong negation normal form", 30000.0, [](Result& r) {
        corpus::Rng rng(1009);
        corpus::ProgramShape shape;
        shape.global = true;
        double worst = 0;
        for (int i = 0; i < 300; ++i) {
            const Program p = corpus::random_program(rng, shape);
            const Program n = to_strong_nnf(p);
            r.expect(program_is_strong_nnf(n), "output is in strong NNF");
            r.expect(program_size(n) <= 4 * program_size(p), "size blowup");
            worst = std::max(worst, static_cast<double>(program_size(n)) / program_size(p));
            const KripkeModel m = corpus::random_model(rng, 4, shape.props).model;
            const auto a = trace_run(p, m, 8);
            const auto b = trace_run(n, m, 8);
            for (std::size_t round = 0; round < a.size(); ++round)
                for (std::size_t x = 0; x < p.size(); ++x) {
                    const int y = n.index_of(p.variables[x]);
                    for (int v = 0; v < m.node_count; ++v)
                        r.expect(y >= 0 && a[round].get(v, static_cast<int>(x)) == b[round].get(v, y),
                                 "round-by-round equivalence");
                }
        }
        r.detail << "worst size ratio " << worst;
    });

    criterion(10, "SC satisfiability agrees with brute force", 30000.0, [](Result& r) {
        corpus::Rng rng(1010);
        corpus::ProgramShape shape;
        shape.modal = false;
        shape.props = {"p", "q", "r", "s"};
        int sat = 0, async_sat = 0;
        for (int i = 0; i < 100; ++i) {
            Program p = corpus::random_program(rng, shape);
            p.fragment = Fragment::SC;
            Program a = without_rejecting(p);
            a.semantics = Semantics::Async;
            const auto names = p.propositions();
            const std::set<std::string> universe(names.begin(), names.end());
            bool brute = false, brute_async = false;
            for (unsigned mask = 0; mask < (1u << names.size()); ++mask) {
                std::set<std::string> on;
                for (std::size_t j = 0; j < names.size(); ++j)
                    if (mask & (1u << j))
                        on.insert(names[j]);
                const PointedModel pm = sc_model(on, universe);
                brute = brute || run(p, pm).accepted();
                brute_async = brute_async || solve_async_game(a, pm).winner == Winner::Eloise;
            }
            const auto s = sc_sat(p);
            r.expect(s.has_value() == brute, "sc_sat");
            if (s)
                r.expect(run(p, sc_model(*s, universe)).accepted(), "sc_sat witness");
            const auto t = sc_async_sat(a);
            r.expect(t.has_value() == brute_async, "sc_async_sat");
            if (t)
                r.expect(solve_async_game(a, sc_model(*t, universe)).winner == Winner::Eloise, "sc_async_sat witness");
            sat += brute;
            async_sat += brute_async;
        }
        r.detail << sat << " satisfiable, " << async_sat << " asynchronously satisfiable of 100";
    });

    criterion(11, "formula size game", 120000.0, [](Result& r) {
        auto single = [](bool p) { return sc_model(p ? std::set<std::string>{"p"} : std::set<std::string>{}, {"p"}); };
        const auto three = separation_oracle({single(true)}, {single(false)}, 3, {"p"}, Fragment::MSC);
        r.expect(three.has_value() && program_size(*three) == 3, "oracle finds a size-3 separator");
        r.expect(!separation_oracle({single(true)}, {single(false)}, 2, {"p"}, Fragment::MSC).has_value(),
                 "oracle finds nothing at size 2");

        PointedModel a;
        a.model = KripkeModel(2);
        a.model.props = {"p"};
        a.model.add_edge(0, 1);
        a.model.set_true(1, "p");
        PointedModel loop = a;
        loop.model.valuation[1].clear();
        loop.model.add_edge(1, 1);
        const ReplayStats rs = random_replay({a, single(true)}, {loop, single(false)}, 8, {"p"}, 1000, 7);
        r.expect(rs.plays == 1000, "1000 plays");

        PointedModel b;
        b.model = KripkeModel(2);
        b.model.props = {"p"};
        b.model.add_edge(1, 0);
        b.model.set_true(0, "p");
        b.point = 1;
        const ClockedClass A{ClockedModel{a, 0}}, B{ClockedModel{b, 0}}, none;
        fsgsearch::SearchStats st;
        FsgMoveSpace sp;
        sp.max_threshold = 2;
        sp.global = true;
        for (int budget : {3, 4, 5, 6})
            for (const auto& l0 : {std::vector<ClockedClass>{A, none}, std::vector<ClockedClass>{none, A},
                                   std::vector<ClockedClass>{A, A}}) {
                const FsgPosition pos = fsg_start(A, B, {{"V1", false}, {"V1", true}}, l0, budget, {"p"});
                if (!delilah_bisim_advice(pos))
                    continue;
                fsgsearch::advisor_search(pos, sp, st, 5000000);
            }
        r.expect(st.violations == 0, std::to_string(st.violations) + " advisor violations");
        r.expect(st.positions > 0, "advisor search ran");
        r.detail << "oracle: " << (three ? schema_to_string(three->base[0]) + " / " + schema_to_string(three->induction[0])
                                         : std::string("none"))
                 << "; replay longest " << rs.longest << "; advisor positions " << st.positions;
    });

    criterion(12, "meta reduction of an unbounded machine", 30000.0, [](Result& r) {
        const BoundedTm t = parse_tm(read_text_file(data("two_state.tm")), "two_state.tm");
        const Program m = meta_reduce(t);
        int words = 0;
        for (const auto& w : corpus::all_words(t.input, 3)) {
            ++words;
            const TmResult res = run_tm(t, w, 100000);
            const Verdict v = run(m, input_reduce(t, w, 100000), 1000000);
            r.expect(res.kind == TmResult::Kind::Accept || res.kind == TmResult::Kind::Reject, "machine halts");
            r.expect(same_outcome(res, v), "verdict on a word of length " + std::to_string(w.size()));
        }
        r.detail << words << " words";
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}
