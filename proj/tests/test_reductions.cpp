#include <doctest.h>

#include "corpus.hpp"
#include "msc/eval.hpp"
#include "msc/games.hpp"
#include "msc/reductions.hpp"
#include "msc/textio.hpp"
#include "msc/tm.hpp"

using namespace msc;

namespace {

std::set<std::string> subset(const std::vector<std::string>& xs, unsigned mask)
{
    std::set<std::string> out;
    for (std::size_t i = 0; i < xs.size(); ++i)
        if (mask & (1u << i))
            out.insert(xs[i]);
    return out;
}

bool brute_sat(const Program& p, bool async)
{
    std::vector<std::string> props;
    for (const auto& x : p.propositions())
        props.push_back(x);
    const std::set<std::string> universe(props.begin(), props.end());
    for (unsigned mask = 0; mask < (1u << props.size()); ++mask) {
        const PointedModel pm = sc_model(subset(props, mask), universe);
        if (async ? solve_async_game(p, pm).winner == Winner::Eloise : run(p, pm).accepted())
            return true;
    }
    return false;
}

}  // namespace

TEST_CASE("QBF evaluation and the QBF machine")
{
    const Qbf iff = parse_qbf("forall x\nexists y\nmatrix (x & y) | (!x & !y)\n");
    CHECK(eval_qbf(iff));
    const Qbf swapped = parse_qbf("exists y\nforall x\nmatrix (x & y) | (!x & !y)\n");
    CHECK_FALSE(eval_qbf(swapped));
    CHECK(parse_qbf(serialize_qbf(iff)) == iff);

    const auto [word, t] = qbf_to_lba(iff);
    CHECK(word == qbf_word(iff));
    CHECK(run_tm(*t, word).kind == TmResult::Kind::Accept);
    CHECK(run_tm(*t, qbf_word(swapped)).kind == TmResult::Kind::Reject);

    int checked = 0;
    for (const Qbf& q : corpus::exhaustive_qbfs()) {
        if (q.prefix.size() > 1 || ++checked > 40)
            continue;
        CHECK(qbf_to_msc_pipeline(q) == eval_qbf(q));
    }
    CHECK(qbf_to_msc_pipeline(iff));
}

TEST_CASE("circuits to asynchronous SC")
{
    const Circuit c = parse_circuit("gate a input x0\ngate b input x1\ngate n not a\ngate o or n b\noutput o\n");
    CHECK(parse_circuit(serialize_circuit(c)) == c);
    for (const auto& bits : corpus::all_bit_vectors(2)) {
        const bool implication = !bits[0] || bits[1];
        CHECK(eval_circuit(c, bits) == implication);
        CHECK(circuit_async_accepts(c, bits) == implication);
    }
    corpus::Rng rng(23);
    for (int i = 0; i < 30; ++i) {
        const Circuit r = corpus::random_circuit(rng, 3, 7);
        for (const auto& bits : corpus::all_bit_vectors(static_cast<int>(r.input_vars().size())))
            CHECK(circuit_async_accepts(r, bits) == eval_circuit(r, bits));
    }
}

TEST_CASE("MSC on fixed-length words to SC")
{
    const Program p = parse_program("program MSC\naccept X\nX(0) := []F\nX := <>X & []X\n");
    const Program sc = msc_word_to_sc(p, 3);
    CHECK(sc.fragment == Fragment::SC);
    CHECK(program_size(sc) <= 3 * 3 * program_size(p));
    for (const auto& w : corpus::all_words({"a", "b"}, 3, 3))
        CHECK(run(sc, word_to_sc_model(p, w)).kind == k_accepts(p, w, 0).kind);
    CHECK(indexed_name("a", 2) != indexed_name("a", 3));
}

TEST_CASE("SC satisfiability agrees with brute force")
{
    CHECK(sc_sat(parse_program("program SC\naccept X\nX(0) := p & !q\nX := F\n")) == std::set<std::string>{"p"});
    CHECK_FALSE(sc_sat(parse_program("program SC\naccept X\nX(0) := p & !p\nX := F\n")));

    corpus::Rng rng(31);
    corpus::ProgramShape shape;
    shape.modal = false;
    shape.props = {"p", "q", "r"};
    for (int i = 0; i < 40; ++i) {
        Program p = corpus::random_program(rng, shape);
        p.fragment = Fragment::SC;
        const auto s = sc_sat(p);
        CHECK(s.has_value() == brute_sat(p, false));
        if (s) {
            const auto props = p.propositions();
            CHECK(run(p, sc_model(*s, {props.begin(), props.end()})).accepted());
        }
        Program a = p;
        a.semantics = Semantics::Async;
        a.rejecting.clear();
        CHECK(sc_async_sat(a).has_value() == brute_sat(a, true));
    }
}
