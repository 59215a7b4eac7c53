#include <doctest.h>

#include "corpus.hpp"
#include "msc/errors.hpp"
#include "msc/eval.hpp"
#include "msc/textio.hpp"
#include "msc/tmbridge.hpp"

using namespace msc;

namespace {

BoundedTm machine(const std::string& name) { return parse_tm(read_text_file(std::string(MSC_TEST_DATA) + "/" + name + ".tm")); }

bool same_outcome(const TmResult& r, const Verdict& v)
{
    return (r.kind == TmResult::Kind::Accept) == (v.kind == Verdict::Kind::Accepted) &&
           (r.kind == TmResult::Kind::Reject) == (v.kind == Verdict::Kind::Rejected);
}

}  // namespace

TEST_CASE("machine runs")
{
    const BoundedTm even = machine("even_a");
    CHECK(run_tm(even, {"a", "a"}).kind == TmResult::Kind::Accept);
    CHECK(run_tm(even, {"a", "b"}).kind == TmResult::Kind::Reject);
    CHECK(run_tm(even, {}).kind == TmResult::Kind::Accept);
    // Three letters, then the step that reads the right end marker.
    CHECK(run_tm(even, {"b", "a", "a"}).steps == 4);

    const BoundedTm bounce = machine("bounce_b");
    CHECK(run_tm(bounce, {"a", "b"}).kind == TmResult::Kind::NonHalting);
    CHECK(run_tm(bounce, {"a"}).kind == TmResult::Kind::Reject);

    const BoundedTm back = machine("mark_back");
    const TmResult r = run_tm(back, {"a", "b"});
    CHECK(r.kind == TmResult::Kind::Accept);
    CHECK(r.max_head == 3);  // the padding cell
    CHECK(run_tm(back, {"b", "a"}).kind == TmResult::Kind::Reject);
    CHECK(run_tm(back, {"a", "b"}, 2).kind == TmResult::Kind::FuelExhausted);
}

TEST_CASE("machine text round trip")
{
    const BoundedTm t = machine("mark_back");
    CHECK(parse_tm(serialize_tm(t)) == t);
    CHECK_THROWS_AS(parse_tm("bound 0\nstates s\ntape a _ L R\ninput a\nstart nope\n"), Error);
}

TEST_CASE("compiled machines run in lockstep")
{
    for (const char* name : {"even_a", "mark_back", "bounce_b"}) {
        const BoundedTm t = machine(name);
        const Program p = compile_tm_to_msc(t);
        CHECK(parse_program(serialize_program(p)).size() == p.size());
        for (const auto& w : corpus::all_words({"a", "b"}, 3)) {
            const PointedModel pm = extended_word_model(w, t.bound);
            CHECK(same_outcome(run_tm(t, w), run(p, pm, 100000)));
            const auto steps = tm_trace(t, w, 40);
            const auto rounds = trace_run(p, pm.model, static_cast<long>(steps.size()) - 1);
            for (std::size_t i = 0; i < steps.size(); ++i) {
                const auto c = decode_tm_config(t, p, rounds[i]);
                REQUIRE(c.has_value());
                CHECK(*c == steps[i]);
            }
        }
    }
}

TEST_CASE("programs compile to machines")
{
    CHECK(is_flat(parse_program("program MSC\naccept X\nX(0) := a\nX := <>X & []X\n")));
    // A modal base body is not flat.
    CHECK_FALSE(is_flat(parse_program("program MSC\naccept X\nX(0) := []F\nX := <>X & []X\n")));
    const Program nested = parse_program("program MSC\naccept Y\nY(0) := a\nY := Y | <>(b & <>Y)\n");
    CHECK_FALSE(is_flat(nested));
    const Program flat = flatten(nested);
    CHECK(is_flat(flat));
    for (int k : {0, 1}) {
        const BoundedTm t = compile_program_to_tm(nested, k, {"a", "b"});
        for (const auto& w : corpus::all_words({"a", "b"}, 3)) {
            const Verdict v = k_accepts(nested, w, k);
            CHECK(v.kind == k_accepts(flat, w, k).kind);
            CHECK(same_outcome(run_tm(t, w), v));
        }
    }
    const Program counting = parse_program("program GMSC\naccept X\nX(0) := <2>a\nX := X\n");
    CHECK_THROWS_AS(compile_program_to_tm(counting, 0, {"a", "b"}, 1), ValidationError);
}

TEST_CASE("meta reduction of an unbounded machine")
{
    const BoundedTm t = machine("two_state");
    CHECK(t.unbounded());
    const Program m = meta_reduce(t);
    for (const auto& w : corpus::all_words({"a", "b"}, 3)) {
        const TmResult r = run_tm(t, w, 1000);
        REQUIRE((r.kind == TmResult::Kind::Accept || r.kind == TmResult::Kind::Reject));
        const Verdict v = run(m, input_reduce(t, w, 1000), 100000);
        CHECK(same_outcome(r, v));
        CHECK(run(m, input_reduce_s(t, [](int n) { return n + 1; }, w), 100000).kind == v.kind);
    }
    // Even number of b's.
    CHECK(run_tm(t, {"b", "a", "b"}, 1000).kind == TmResult::Kind::Accept);
    CHECK(run_tm(t, {"b"}, 1000).kind == TmResult::Kind::Reject);
}
