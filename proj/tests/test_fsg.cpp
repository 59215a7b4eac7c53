#include <doctest.h>

#include "fsg_search.hpp"
#include "msc/errors.hpp"
#include "msc/eval.hpp"
#include "msc/textio.hpp"

using namespace msc;

namespace {

PointedModel single(bool p)
{
    PointedModel m = sc_model(p ? std::set<std::string>{"p"} : std::set<std::string>{}, {"p"});
    return m;
}

// 0 -> 1 with p at 1, pointed at 0; the second copy has the edge reversed.
PointedModel arrow(bool reversed)
{
    PointedModel m;
    m.model = KripkeModel(2);
    m.model.props = {"p"};
    m.model.add_edge(reversed ? 1 : 0, reversed ? 0 : 1);
    m.model.set_true(reversed ? 0 : 1, "p");
    m.point = reversed ? 1 : 0;
    return m;
}

}  // namespace

TEST_CASE("clocked class algebra")
{
    const PointedModel a = arrow(false);
    ClockedClass c{ClockedModel{a, 0}, ClockedModel{a, 2}, ClockedModel{a, 2}};
    CHECK(c.size() == 2);
    CHECK(iter_class(c) == ClockedClass{ClockedModel{a, 1}});
    CHECK(init_class(c) == ClockedClass{ClockedModel{a, 0}});

    PointedModel at1 = a;
    at1.point = 1;
    CHECK(box_class(ClockedClass{ClockedModel{a, 0}}) == ClockedClass{ClockedModel{at1, 0}});
    CHECK(box_class(ClockedClass{ClockedModel{at1, 0}}).empty());
    CHECK(gbox_class(ClockedClass{ClockedModel{at1, 3}}).size() == 2);
    CHECK(clocked({a, at1}, 1).size() == 2);
    CHECK(fully_clocked({a}, 3).size() == 4);
    CHECK(fully_clocked_bound(2, 3) == 64);
    CHECK_THROWS_AS(fully_clocked_bound(8, 8), ResourceError);
}

TEST_CASE("successor functions are checked")
{
    const PointedModel a = arrow(false);
    const ClockedClass c{ClockedModel{a, 0}};
    const SuccessorFunction ok = {{ClockedModel{a, 0}, {1}}};
    CHECK_NOTHROW(check_successor_function(ok, c, 1, false, true, "fsg.dia"));
    CHECK(successor_image(ok).size() == 1);
    CHECK_THROWS_AS(check_successor_function({{ClockedModel{a, 0}, {0}}}, c, 1, false, true, "fsg.dia"), IllegalMove);
    CHECK_NOTHROW(check_successor_function({{ClockedModel{a, 0}, {0}}}, c, 1, true, true, "fsg.gdia"));
    CHECK_THROWS_AS(check_successor_function({}, c, 1, false, true, "fsg.dia"), IllegalMove);
    CHECK_NOTHROW(check_successor_function({}, c, 1, false, false, "fsg.dia"));
}

TEST_CASE("a short play of the game")
{
    const ClockedClass A{ClockedModel{single(true), 0}};
    const ClockedClass B{ClockedModel{single(false), 0}};
    const FsgPosition start = fsg_start(A, B, {{"V1", false}, {"V1", true}}, {A, {}}, 5, {"p"});
    CHECK(start.resources() == 4);
    CHECK(*fsg_start(A, B, {{"V1", false}, {"V1", true}}, {A, {}}, 3, {"p"}).winner == FsgPlayer::Delilah);
    CHECK(start.U == std::vector<int>{0, 1});
    CHECK(start.right[1] == init_class(B));
    CHECK_THROWS_AS(fsg_start(A, B, {{"V1", false}}, {A}, 3, {"p"}), ValidationError);

    FsgMove sig;
    sig.kind = FsgMoveKind::Sig;
    sig.symbol = ForestLabel{Op::Prop, 0, "p"};
    const FsgPosition won = fsg_apply(start, 0, sig);
    REQUIRE(won.finished());
    CHECK(*won.winner == FsgPlayer::Samson);
    CHECK_THROWS_AS(fsg_apply(won, 1, sig), IllegalMove);

    sig.symbol = ForestLabel{Op::Top, 0, ""};
    CHECK(*fsg_apply(start, 0, sig).winner == FsgPlayer::Delilah);

    // Negation swaps the classes and opens a fresh child.
    FsgMove neg;
    neg.kind = FsgMoveKind::Neg;
    const FsgPosition n = fsg_apply(start, 0, neg);
    CHECK_FALSE(n.finished());
    CHECK(n.in_u(2));
    CHECK(n.left[2] == B);
    CHECK(n.right[2] == A);

    FsgMove var;
    var.kind = FsgMoveKind::Var;
    var.var = "V1";
    CHECK(*fsg_apply(start, 0, var).winner == FsgPlayer::Delilah);
    // At the induction root both sides of iter are empty, so the recursion is won outright.
    CHECK(*fsg_apply(start, 1, var).winner == FsgPlayer::Samson);

    FsgMove bad_or;
    bad_or.kind = FsgMoveKind::Or;
    bad_or.first = B;
    CHECK_THROWS_AS(fsg_apply(start, 0, bad_or), IllegalMove);
}

TEST_CASE("separation oracle")
{
    const auto three = separation_oracle({single(true)}, {single(false)}, 3, {"p"}, Fragment::MSC);
    REQUIRE(three.has_value());
    CHECK(program_size(*three) == 3);
    CHECK(serialize_program(*three).find("V1(0) := p") != std::string::npos);
    CHECK_FALSE(separation_oracle({single(true)}, {single(false)}, 2, {"p"}, Fragment::MSC).has_value());
    CHECK_FALSE(separation_oracle({single(true)}, {single(true)}, 5, {"p"}, Fragment::MSC).has_value());
    const auto empty_a = separation_oracle({}, {single(false)}, 2, {"p"}, Fragment::MSC);
    REQUIRE(empty_a.has_value());
    CHECK(program_size(*empty_a) == 2);
    OracleBounds tight;
    tight.max_candidates = 3;
    CHECK_THROWS_AS(separation_oracle({arrow(false)}, {arrow(true)}, 9, {"p"}, Fragment::GMSC, tight), ResourceError);
}

TEST_CASE("random plays terminate")
{
    const ReplayStats st = random_replay({arrow(false), single(true)}, {single(false)}, 6, {"p"}, 200, 9);
    CHECK(st.plays == 200);
    CHECK(st.samson_wins + st.delilah_wins == 200);
    CHECK(st.longest > 0);
}

TEST_CASE("the advisor keeps a bisimilar pair")
{
    const PointedModel a = arrow(false);
    const PointedModel b = arrow(true);
    const ClockedClass A{ClockedModel{a, 0}};
    const ClockedClass B{ClockedModel{b, 0}};
    for (int budget : {4, 5, 6}) {
        const FsgPosition pos = fsg_start(A, B, {{"V1", false}, {"V1", true}}, {A, {}}, budget, {"p"});
        const auto adv = delilah_bisim_advice(pos);
        REQUIRE(adv.has_value());
        CHECK(adv->node == 0);
        fsgsearch::SearchStats st;
        FsgMoveSpace sp;
        sp.max_threshold = 2;
        sp.global = true;
        fsgsearch::advisor_search(pos, sp, st, 1000000);
        CHECK(st.violations == 0);
        CHECK(st.samson_wins == 0);
        CHECK(st.positions > 1);
    }
}

TEST_CASE("the uniform strategy of a program")
{
    const Program p = parse_program("program MSC\naccept X\nX(0) := F\nX := p | <>X\n");
    CHECK(fsg_peak_resources(p) == program_size(p) + 1);

    UniformSamson us(p);
    PointedModel path = path_model(3, {{"p"}});
    const ClockedClass A = us.clock_models({path});
    REQUIRE(A.size() == 1);
    CHECK(A[0].clock == 2);

    PointedModel loop;
    loop.model = KripkeModel(2);
    loop.model.props = {"p"};
    loop.model.add_edge(0, 1);
    loop.model.add_edge(1, 1);
    const FsgPosition pos = fsg_start(A, fully_clocked({loop}, 2), us.roots(), us.left0(A), fsg_peak_resources(p), {"p"});
    us.begin(pos);
    CHECK(check_position_embedding(pos, p));
    fsgsearch::SearchStats st;
    fsgsearch::uniform_search(us, pos, st, 1000000);
    CHECK(st.violations == 0);
    CHECK(st.delilah_wins == 0);
    CHECK(st.samson_wins > 0);
}

TEST_CASE("the oracle and exhaustive play agree at small sizes")
{
    const PointedModel yes = single(true), no = single(false);
    FsgMoveSpace sp;
    auto wins = [&](const ClockedClass& A, const ClockedClass& B, int budget) {
        const ClockedClass none;
        for (const auto& l0 : {std::vector<ClockedClass>{A, none}, std::vector<ClockedClass>{none, A},
                               std::vector<ClockedClass>{A, A}}) {
            fsgsearch::SearchStats st;
            if (fsgsearch::samson_can_win(fsg_start(A, B, {{"V1", false}, {"V1", true}}, l0, budget, {"p"}), sp, st,
                                          2000000))
                return true;
        }
        return false;
    };
    const ClockedClass A = clocked({yes}, 0);
    const ClockedClass B = fully_clocked({no}, 1);

    const auto sep = separation_oracle({yes}, {no}, 3, {"p"}, Fragment::MSC);
    REQUIRE(sep.has_value());
    CHECK(wins(A, B, fsg_peak_resources(*sep)));
    CHECK_FALSE(separation_oracle({yes}, {no}, 2, {"p"}, Fragment::MSC).has_value());
    CHECK_FALSE(wins(A, B, 3));

    // Nothing separates a model from itself, and no play does either.
    CHECK_FALSE(separation_oracle({yes}, {yes}, 4, {"p"}, Fragment::MSC).has_value());
    CHECK_FALSE(wins(A, fully_clocked({yes}, 1), 5));
}
