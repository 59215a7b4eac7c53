#include <doctest.h>

#include "corpus.hpp"
#include "msc/errors.hpp"
#include "msc/eval.hpp"
#include "msc/textio.hpp"

using namespace msc;

namespace {

const char* kCentre = "program MSC\naccept X\nX(0) := []F\nX := <>X & []X\n";

PointedModel path3(int point)
{
    PointedModel pm = parse_model("nodes 3\nedge 0 1\nedge 1 2\n");
    pm.point = point;
    return pm;
}

}  // namespace

TEST_CASE("centre-point program on a path")
{
    const Program p = parse_program(kCentre);
    const Verdict v = run(p, path3(0));
    CHECK(v.kind == Verdict::Kind::Accepted);
    CHECK(v.round == 2);
    CHECK(v.str() == "AcceptedAt 2");
    CHECK(run(p, path3(2)).round == 0);

    // X sits on one node per round and moves towards the source.
    const auto tr = trace_run(p, path3(0).model, 3);
    REQUIRE(tr.size() == 4);
    CHECK(tr[0].str(p.variables) == "{} {} {X}");
    CHECK(tr[1].str(p.variables) == "{} {X} {}");
    CHECK(tr[2].str(p.variables) == "{X} {} {}");
    CHECK(tr[3].str(p.variables) == "{} {} {}");
}

TEST_CASE("verdict kinds")
{
    const Program loop = parse_program("program SC\naccept X\nX(0) := F\nX := X\n");
    const Verdict v = run(loop, sc_model({}));
    CHECK(v.kind == Verdict::Kind::NeverAccepts);
    CHECK(v.preperiod == 0);
    CHECK(v.period == 1);

    // Y flips every round; X copies Y one round late.
    const Program flip = parse_program("program SC\naccept X\nX(0) := F\nX := Y\nY(0) := F\nY := !Y\n");
    const Verdict f = run(flip, sc_model({}));
    CHECK(f.accepted());
    CHECK(f.round == 2);

    const Program rej = parse_program("program SC\naccept X\nreject Y\nX(0) := F\nX := T\nY(0) := T\nY := T\n");
    CHECK(run(rej, sc_model({})).kind == Verdict::Kind::Rejected);

    const Program tie = parse_program("program SC\naccept X\nreject Y\nX(0) := T\nX := T\nY(0) := T\nY := T\n");
    const Verdict t = run(tie, sc_model({}));
    CHECK(t.accepted());
    CHECK(t.tie);

    CHECK_THROWS_AS(run(flip, sc_model({}), 1), UndeterminedError);
}

TEST_CASE("bit-parallel rounds agree with direct evaluation")
{
    corpus::Rng rng(11);
    corpus::ProgramShape shape;
    shape.global = true;
    for (int i = 0; i < 150; ++i) {
        const Program p = corpus::random_program(rng, shape);
        const KripkeModel m = corpus::random_model(rng, 5, {"p", "q"}).model;
        GlobalConfiguration g(m.node_count, static_cast<int>(p.size()));
        for (int v = 0; v < m.node_count; ++v)
            for (std::size_t x = 0; x < p.size(); ++x)
                g.set(v, static_cast<int>(x), eval_schema(m, g, v, p.base[x], p.variables));
        const auto tr = trace_run(p, m, 6);
        CHECK(tr[0] == g);
        for (int r = 1; r <= 6; ++r) {
            GlobalConfiguration next(m.node_count, static_cast<int>(p.size()));
            for (int v = 0; v < m.node_count; ++v)
                for (std::size_t x = 0; x < p.size(); ++x)
                    next.set(v, static_cast<int>(x), eval_schema(m, g, v, p.induction[x], p.variables));
            g = next;
            CHECK(tr[static_cast<std::size_t>(r)] == g);
        }
    }
}

TEST_CASE("counting and global modalities")
{
    const PointedModel star = parse_model("nodes 4\nedge 0 1\nedge 0 2\nedge 0 3\nprop p 1 2\npoint 0\n");
    GlobalConfiguration g(4, 0);
    auto holds = [&](const std::string& text) {
        return eval_schema(star.model, g, star.point, parse_schema(text));
    };
    CHECK(holds("<2>p"));
    CHECK_FALSE(holds("<3>p"));
    // [k]p: fewer than k successors refute p. Node 3 is the only one.
    CHECK(holds("[2]p"));
    CHECK_FALSE(holds("[1]p"));
    CHECK(holds("<<2>>p"));
    CHECK_FALSE(holds("<<3>>p"));
    CHECK(holds("[[1]]!q"));
    CHECK_FALSE(holds("[[4]]q"));
    CHECK(holds("<=2>p"));
    CHECK_FALSE(holds("<=1>p"));
    CHECK(holds("!<>F & []T"));
}

TEST_CASE("word models and k-acceptance")
{
    const PointedModel w = extended_word_model({"a", "b"}, 1);
    // p_left, a, b, one blank, p_right; pointed at the first letter
    CHECK(w.model.node_count == 5);
    CHECK(w.point == 1);
    CHECK(w.model.holds(3, kBlankProp));
    CHECK(w.model.successors()[2] == std::vector<int>{1, 3});
    const Program first_a = parse_program("program MSC\naccept X\nX(0) := a & <>p_left\nX := F\n");
    CHECK(k_accepts(first_a, {"a", "b"}, 0).accepted());
    CHECK_FALSE(k_accepts(first_a, {"b", "a"}, 0).accepted());
    // With no letters and no padding the point is the right end marker itself.
    const Program at_end = parse_program("program MSC\naccept X\nX(0) := p_right\nX := F\n");
    CHECK(k_accepts(at_end, {}, 0).accepted());
    CHECK_FALSE(k_accepts(at_end, {}, 1).accepted());
    // X := <>X moves X one cell per round; p_right is three cells right of the point.
    const Program walk = parse_program("program MSC\naccept X\nX(0) := p_right\nX := <>X\n");
    CHECK(k_accepts(walk, {"a", "a"}, 1).round == 3);
}
