#include <doctest.h>

#include "corpus.hpp"
#include "msc/errors.hpp"
#include "msc/eval.hpp"
#include "msc/games.hpp"
#include "msc/mcl.hpp"
#include "msc/textio.hpp"

using namespace msc;

namespace {

const char* kCentre = "program MSC\naccept X\nX(0) := []F\nX := <>X & []X\n";
const char* kReach = "program MSC async\naccept X\nX(0) := p\nX := <>X\n";

PointedModel path3(int point, bool p_at_end = false)
{
    PointedModel pm = parse_model(std::string("nodes 3\nedge 0 1\nedge 1 2\n") + (p_at_end ? "prop p 2\n" : "prop p\n"));
    pm.point = point;
    return pm;
}

}  // namespace

TEST_CASE("formula game")
{
    const PointedModel pm = parse_model("nodes 1\nprop p 0\n");
    GlobalConfiguration g(1, 0);
    CHECK(solve_formula_game(pm.model, g, 0, s_top()).winner == Winner::Eloise);
    CHECK(solve_formula_game(pm.model, g, 0, parse_schema("!p")).winner == Winner::Abelard);
    CHECK(solve_formula_game(pm.model, g, 0, parse_schema("p & !<>T")).winner == Winner::Eloise);
}

TEST_CASE("standard game")
{
    const Program p = parse_program(kCentre);
    const GameOutcome o = solve_standard_game(p, path3(0));
    CHECK(o.winner == Winner::Eloise);
    CHECK(o.initial_clock == 2);
    CHECK_FALSE(o.witness.empty());
    CHECK(solve_standard_game_bounded(p, path3(0), 2).winner == Winner::Eloise);
    CHECK(solve_standard_game_bounded(p, path3(0), 1).winner == Winner::Abelard);

    const Program loop = parse_program("program SC\naccept X\nX(0) := F\nX := X\n");
    CHECK(solve_standard_game(loop, sc_model({})).winner == Winner::Abelard);
}

TEST_CASE("standard game agrees with the run on a corpus")
{
    corpus::Rng rng(5);
    corpus::ProgramShape shape;
    for (int i = 0; i < 120; ++i) {
        const Program p = corpus::random_program(rng, shape);
        const PointedModel pm = corpus::random_model(rng, 3, shape.props);
        const Verdict v = run(p, pm);
        // The acceptance notion of the game ignores rejection.
        Program acc = p;
        acc.rejecting.clear();
        const bool accepted = run(acc, pm).accepted();
        CHECK((solve_standard_game(p, pm).winner == Winner::Eloise) == accepted);
        if (v.kind == Verdict::Kind::NeverAccepts)
            CHECK(solve_standard_game_bounded(acc, pm, static_cast<int>(v.preperiod + v.period)).winner ==
                  Winner::Abelard);
    }
}

TEST_CASE("global game")
{
    const Program p = parse_program(kCentre);
    const auto s = global_game_eloise_strategy(p, path3(0));
    REQUIRE(s.has_value());
    CHECK(s->trace.size() == 3);
    CHECK(global_strategy_survives(p, path3(0), *s));

    const Program never = parse_program("program MSC\naccept X\nX(0) := p\nX := <>X\n");
    CHECK_FALSE(global_game_eloise_strategy(never, path3(0)).has_value());
    CHECK(global_game_eloise_strategy(never, path3(0, true)).has_value());
}

TEST_CASE("asynchronous game")
{
    const Program p = parse_program(kReach);
    CHECK(solve_async_game(p, path3(0, true)).winner == Winner::Eloise);
    CHECK(solve_async_game(p, path3(0, false)).winner != Winner::Eloise);
    CHECK(solve_mcl_game(path3(0, true), translate_async_program(p)) == Winner::Eloise);
    CHECK(solve_mcl_game(path3(0, false), translate_async_program(p)) != Winner::Eloise);
}

TEST_CASE("interactive session")
{
    const Program p = parse_program(kCentre);
    GameSession s(p, path3(0), GameSession::Kind::Standard);
    CHECK_FALSE(s.finished());
    CHECK(s.to_move() == Winner::Eloise);
    CHECK_THROWS_AS(s.apply("no-such-move"), IllegalMove);
    int guard = 0;
    while (!s.finished() && ++guard < 1000)
        s.apply(s.suggest());
    REQUIRE(s.finished());
    CHECK(s.winner() == Winner::Eloise);
    CHECK_FALSE(s.history().empty());
}
