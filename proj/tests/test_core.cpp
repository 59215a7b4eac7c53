#include <doctest.h>

#include "msc/bisim.hpp"
#include "msc/errors.hpp"
#include "msc/forest.hpp"
#include "msc/nnf.hpp"
#include "msc/textio.hpp"

using namespace msc;

namespace {

const char* kTwoPredicates = R"(program GMSC
accept X
X(0) := !p
X := Y & <2>X
Y(0) := r | q
Y := [3]!Y
)";

int count_var_nodes(const SyntaxForest& f)
{
    int n = 0;
    for (const auto& nd : f.nodes)
        n += nd.labeled && nd.label.op == Op::Var;
    return n;
}

}  // namespace

TEST_CASE("program size counts heads, connectives and thresholds")
{
    const Program p = parse_program(kTwoPredicates);
    CHECK(program_size(p) == 19);
    CHECK(forest_size(syntax_forest(p)) == 19);

    CHECK(program_size(parse_program("program SC\naccept X\nX(0) := T\nX := X\n")) == 3);
    CHECK(program_size(parse_program("program SC\naccept X\nX(0) := p\nX := F\n")) == 3);
    // Hand count: 2 heads, <3> counts 3, [2] counts 2, two props, one var, one &.
    CHECK(program_size(parse_program("program GMSC\naccept X\nX(0) := <3>p\nX := [2](X & q)\n")) == 11);
}

TEST_CASE("syntax forest shape")
{
    const SyntaxForest f = syntax_forest(parse_program(kTwoPredicates));
    CHECK(f.roots().size() == 4);
    CHECK(f.nodes.size() == 12);
    CHECK(count_var_nodes(f) == 3);
    CHECK(f.back_edges.size() == 6);
    CHECK_NOTHROW(f.validate());

    int dia = -1;
    for (std::size_t i = 0; i < f.nodes.size(); ++i)
        if (f.nodes[i].label.op == Op::Dia)
            dia = static_cast<int>(i);
    REQUIRE(dia >= 0);
    CHECK(schema_to_string(forest_subformula(f, dia)) == "<2>X");

    const SyntaxForest t = syntax_forest(parse_program("program SC\naccept X\nX(0) := T\nX := T\n"));
    CHECK(t.nodes.size() == 2);
    CHECK(t.back_edges.empty());
}

TEST_CASE("partial forests")
{
    SyntaxForest f;
    const int r = f.add_root("X", false);
    CHECK(forest_size(f) == 2);
    const int c = f.add_child(r);
    f.set_label(r, ForestLabel{Op::Dia, 3, ""});
    CHECK(forest_size(f) == 1 + 3 + 1);
    CHECK(f.reaches(r, c));
    CHECK_FALSE(f.reaches(c, r));
    CHECK_THROWS_AS(f.add_back_edge(r, c), ValidationError);

    // A variable root may point back at itself: the forest of X := X.
    const SyntaxForest self = syntax_forest(parse_program("program SC\naccept X\nX(0) := p\nX := X\n"));
    CHECK(self.back_edges.size() == 2);
    CHECK_NOTHROW(self.validate());
}

TEST_CASE("program text round trip")
{
    const Program p = parse_program(kTwoPredicates);
    const Program q = parse_program(serialize_program(p));
    CHECK(program_equal(p, q));
    CHECK(q.fragment == Fragment::GMSC);
}

TEST_CASE("parse errors carry a span")
{
    try {
        parse_program("program MSC\naccept X\nX(0) := p &\nX := X\n", "bad.msc");
        FAIL("expected a parse error");
    } catch (const ParseError& e) {
        CHECK(e.span().file == "bad.msc");
        CHECK(e.span().line == 3);
    }
    CHECK_THROWS_AS(parse_model("nodes 2\nedge 0 5\n"), Error);
    CHECK_THROWS_AS(parse_schema("<0>p"), ParseError);
}

TEST_CASE("model text round trip")
{
    const PointedModel pm = parse_model("nodes 3\nedge 0 1\nedge 1 2\nprop p 2\npoint 1\n");
    CHECK(pm.model.node_count == 3);
    CHECK(pm.point == 1);
    CHECK(pm.model.holds(2, "p"));
    CHECK_FALSE(pm.model.holds(1, "p"));
    CHECK(parse_model(serialize_model(pm)) == pm);
}

TEST_CASE("bisimulation kinds")
{
    const PointedModel one = parse_model("nodes 2\nedge 0 1\npoint 0\n");
    const PointedModel two = parse_model("nodes 3\nedge 0 1\nedge 0 2\npoint 0\n");
    CHECK(check_bisimilar(one, two, BisimKind::Plain));
    CHECK_FALSE(check_bisimilar(one, two, BisimKind::Counting));
    CHECK_FALSE(check_bisimilar(one, two, BisimKind::GlobalCounting));
    // Bounded: both points have successors, so they agree for 1 round even when counted...
    CHECK(check_bisimilar(one, two, BisimKind::Counting, 0));
    CHECK_FALSE(check_bisimilar(one, two, BisimKind::Counting, 1));

    // Paths of length 3 and 5 from the source look alike for 3 rounds, not 4.
    const PointedModel p3 = parse_model("nodes 4\nedge 0 1\nedge 1 2\nedge 2 3\npoint 0\n");
    const PointedModel p5 = parse_model("nodes 6\nedge 0 1\nedge 1 2\nedge 2 3\nedge 3 4\nedge 4 5\npoint 0\n");
    CHECK(check_bisimilar(p3, p5, BisimKind::Plain, 3));
    CHECK_FALSE(check_bisimilar(p3, p5, BisimKind::Plain, 4));
    CHECK(parse_bisim_kind("global") == BisimKind::GlobalCounting);
}

TEST_CASE("strong negation normal form")
{
    const Program p = parse_program(kTwoPredicates);
    const Program n = to_strong_nnf(p);
    CHECK(program_is_strong_nnf(n));
    CHECK_FALSE(program_is_strong_nnf(p));
    CHECK(program_size(n) <= 4 * program_size(p));
}
