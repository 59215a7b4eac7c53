#include <doctest.h>

#include "corpus.hpp"
#include "msc/errors.hpp"
#include "msc/games.hpp"
#include "msc/mcl.hpp"
#include "msc/textio.hpp"

using namespace msc;

namespace {

// X: Y & Z, Y: <>X, Z: X | Y. Every predicate depends on another one.
Program gamma_program()
{
    return parse_program("program MSC async\naccept X\nX(0) := p\nX := Y & Z\nY(0) := q\nY := <>X\n"
                         "Z(0) := r\nZ := X | Y\n");
}

}  // namespace

TEST_CASE("MCL text and trees")
{
    const Mcl f = parse_mcl("L:a(p | <>@a)");
    CHECK(mcl_to_string(f) == "L:a((p | <1>@a))");
    CHECK(mcl_equal(parse_mcl(serialize_mcl(f)), f));
    CHECK(mcl_size(f) > 0);

    const MclTree t = mcl_tree(f);
    REQUIRE(t.node.size() == 5);
    CHECK(t.parent[0] == -1);
    CHECK(t.node[4]->op == MOp::Claim);
    CHECK(reference_formula(t, 4) == 0);
    CHECK(dangling_claims(f).empty());

    CHECK(dangling_claims(parse_mcl("L:a(<>@b)")).size() == 1);
    // Only ancestors count as references.
    CHECK(dangling_claims(parse_mcl("L:a(p) | @a")).size() == 1);
    CHECK_THROWS_AS(parse_schema("@a"), ParseError);
}

TEST_CASE("MCL game")
{
    const Mcl reach = parse_mcl("L:a(p | <>@a)");
    PointedModel path = path_model(3, {{"p"}});
    CHECK(solve_mcl_game(path, reach) == Winner::Eloise);
    path.model.valuation[0].clear();
    CHECK(solve_mcl_game(path, reach) != Winner::Eloise);
    CHECK(solve_mcl_game(sc_model({}), parse_mcl("!(p & T)")) == Winner::Eloise);
}

TEST_CASE("translation keeps every claim bound")
{
    const Program g = gamma_program();
    CHECK_FALSE(dangling_claims(naive_translate(g)).empty());
    CHECK(dangling_claims(translate_async_program(g)).empty());

    corpus::Rng rng(17);
    corpus::ProgramShape shape;
    shape.semantics = Semantics::Async;
    shape.with_rejecting = false;
    shape.max_rules = 3;
    for (int i = 0; i < 60; ++i) {
        const Program p = corpus::random_program(rng, shape);
        const Mcl f = translate_async_program(p);
        CHECK(dangling_claims(f).empty());
        const PointedModel pm = corpus::random_model(rng, 3, shape.props);
        CHECK((solve_mcl_game(pm, f) == Winner::Eloise) == (solve_async_game(p, pm).winner == Winner::Eloise));
    }
}
