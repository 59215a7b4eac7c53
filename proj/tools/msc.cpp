// msc: command-line front end. Exit status 0 = accepted / true / found, 1 = not, 2 = error.

#include <CLI11.hpp>

#include <iostream>
#include <random>
#include <sstream>

#include "msc/bisim.hpp"
#include "msc/errors.hpp"
#include "msc/eval.hpp"
#include "msc/fsg.hpp"
#include "msc/games.hpp"
#include "msc/reductions.hpp"
#include "msc/textio.hpp"
#include "msc/tmbridge.hpp"

using namespace msc;

namespace {

constexpr int kYes = 0;
constexpr int kNo = 1;

const char* kGrammar = R"(File formats
  program (.msc)  program <SC|MSC|GMSC|GGMSC> [async]
                  accept X Y...        reject Z...   (optional)
                  X(0) := <schema>     X := <schema>
                  schemata: T F p X !a a&b a|b a->b a<->b (a)
                    <k>a  at least k successors satisfy a     [k]a  fewer than k refute a
                    <<k>>a, [[k]]a  the same over all nodes   <>, [], <<>>, [[]]  k = 1
                    <=k>a  exactly k (desugared)
  model (.km)     nodes N | edge a b | prop p n1 n2... | point n
  machine (.tm)   bound k|inf | states ... | tape a b _ L R | input a b | start q
                  accept q | reject q | delta q a -> q' a' <L|R|S>
  circuit (.bc)   gate g input x | gate g and|or g1 g2... | gate g not g1 | output g
  qbf (.qbf)      forall x | exists y ... then: matrix <formula over ! & | ( )>
  mcl (.mcl)      program connectives plus L:name(...) labels and @name claims
Comments start with #.)";

struct Out {
    std::string path;
    void emit(const std::string& text) const
    {
        if (path.empty())
            std::cout << text;
        else
            write_text_file(path, text);
    }
};

Program load_program(const std::string& path) { return parse_program(read_text_file(path), path); }
PointedModel load_model(const std::string& path) { return parse_model(read_text_file(path), path); }
BoundedTm load_tm(const std::string& path) { return parse_tm(read_text_file(path), path); }

std::vector<std::string> split_csv(const std::string& s)
{
    std::vector<std::string> out;
    std::stringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ','))
        if (!item.empty())
            out.push_back(item);
    return out;
}

// One line from stdin, nullopt on EOF or "q".
std::optional<std::string> prompt(const std::string& what)
{
    std::cout << what << "> " << std::flush;
    std::string line;
    if (!std::getline(std::cin, line))
        return std::nullopt;
    const auto b = line.find_first_not_of(" \t");
    const auto e = line.find_last_not_of(" \t\r");
    line = b == std::string::npos ? "" : line.substr(b, e - b + 1);
    if (line == "q" || line == "quit")
        return std::nullopt;
    return line;
}

std::optional<std::size_t> menu_choice(const std::string& line, std::size_t n)
{
    try {
        std::size_t used = 0;
        long i = std::stol(line, &used);
        if (used == line.size() && i >= 0 && static_cast<std::size_t>(i) < n)
            return static_cast<std::size_t>(i);
    } catch (const std::exception&) {
    }
    return std::nullopt;
}

// ---------------------------------------------------------------- check

struct CheckArgs {
    std::string model, program, game;
    bool async = false;
    bool trace = false;
    long max_rounds = 1000000;
};

int cmd_check(const CheckArgs& a)
{
    const PointedModel pm = load_model(a.model);
    const Program p = load_program(a.program);
    std::string game = a.game;
    if (a.async || (game.empty() && p.semantics == Semantics::Async))
        game = "async";
    if (game.empty()) {
        const Verdict v = run(p, pm, a.max_rounds);
        if (a.trace) {
            const long last = v.kind == Verdict::Kind::NeverAccepts ? v.preperiod + v.period : v.round;
            const auto tr = trace_run(p, pm.model, last);
            for (std::size_t i = 0; i < tr.size(); ++i)
                std::cout << "round " << i << ": " << tr[i].str(p.variables) << "\n";
        }
        std::cout << v.str() << "\n";
        return v.accepted() ? kYes : kNo;
    }
    if (game == "standard") {
        const GameOutcome g = solve_standard_game(p, pm, a.max_rounds);
        std::cout << "standard game: " << winner_name(g.winner) << " wins";
        if (g.winner == Winner::Eloise)
            std::cout << " (initial round " << g.initial_clock << ")";
        std::cout << "\n";
        if (a.trace)
            for (const auto& w : g.witness)
                std::cout << "  " << w << "\n";
        return g.winner == Winner::Eloise ? kYes : kNo;
    }
    if (game == "async") {
        const GameOutcome g = solve_async_game(p, pm);
        std::cout << "async game: " << winner_name(g.winner) << (g.winner == Winner::NoWinner ? "" : " wins") << "\n";
        if (a.trace)
            for (const auto& w : g.witness)
                std::cout << "  " << w << "\n";
        return g.winner == Winner::Eloise ? kYes : kNo;
    }
    if (game == "global") {
        const auto s = global_game_eloise_strategy(p, pm, a.max_rounds);
        std::cout << "global game: " << (s ? "Eloise" : "Abelard") << " wins\n";
        if (s && a.trace)
            for (std::size_t i = 0; i < s->trace.size(); ++i)
                std::cout << "  g" << i << " = " << s->trace[i].str(p.variables) << "\n";
        return s ? kYes : kNo;
    }
    throw ValidationError("unknown game '" + game + "' (standard, async, global)");
}

// ---------------------------------------------------------------- play

struct PlayArgs {
    std::string model, program, kind = "standard", as = "eloise";
};

int cmd_play(const PlayArgs& a)
{
    const PointedModel pm = load_model(a.model);
    const Program p = load_program(a.program);
    GameSession::Kind kind = GameSession::Kind::Standard;
    if (a.kind == "async")
        kind = GameSession::Kind::Async;
    else if (a.kind == "global")
        kind = GameSession::Kind::Global;
    else if (a.kind != "standard")
        throw ValidationError("unknown game '" + a.kind + "' (standard, async, global)");
    if (a.as != "eloise" && a.as != "abelard" && a.as != "both" && a.as != "none")
        throw ValidationError("--as takes eloise, abelard, both or none");
    GameSession s(p, pm, kind);
    auto human = [&](Winner w) {
        return a.as == "both" || (a.as == "eloise" && w == Winner::Eloise) || (a.as == "abelard" && w == Winner::Abelard);
    };
    while (!s.finished()) {
        std::cout << s.describe() << "\n";
        const auto moves = s.legal_moves();
        if (!human(s.to_move())) {
            const std::string m = s.suggest();
            std::cout << winner_name(s.to_move()) << " plays " << m << "\n";
            s.apply(m);
            continue;
        }
        for (std::size_t i = 0; i < moves.size(); ++i)
            std::cout << "  [" << i << "] " << moves[i] << "\n";
        auto line = prompt(winner_name(s.to_move()));
        if (!line)
            return kNo;
        auto idx = menu_choice(*line, moves.size());
        try {
            s.apply(idx ? moves[*idx] : *line);
        } catch (const IllegalMove& e) {
            std::cout << e.what() << "\n";
        }
    }
    std::cout << winner_name(s.winner()) << " wins: " << s.reason() << "\n";
    return s.winner() == Winner::Eloise ? kYes : kNo;
}

// ---------------------------------------------------------------- compile, meta

int cmd_tm2msc(const std::string& in, const Out& out)
{
    out.emit(serialize_program(compile_tm_to_msc(load_tm(in))));
    return kYes;
}

int cmd_msc2tm(const std::string& in, int bound, const std::string& alphabet, const Out& out)
{
    out.emit(serialize_tm(compile_program_to_tm(load_program(in), bound, split_csv(alphabet))));
    return kYes;
}

int cmd_meta(const std::string& in, const std::string& word_text, long fuel)
{
    const BoundedTm t = load_tm(in);
    const auto word = split_word(t, word_text);
    const TmResult r = run_tm(t, word, fuel);
    std::cout << "machine: " << r.str() << "\n";
    if (r.kind != TmResult::Kind::Accept && r.kind != TmResult::Kind::Reject) {
        std::cout << "no padding is defined without a halting run within the fuel\n";
        return kNo;
    }
    const Program m = meta_reduce(t);
    const PointedModel pm = input_reduce(t, word, fuel);
    const Verdict v = run(m, pm);
    std::cout << "program: " << v.str() << " (model with " << pm.model.node_count << " nodes)\n";
    return v.accepted() ? kYes : kNo;
}

// ---------------------------------------------------------------- reduce, sat

int cmd_qbf2word(const std::string& in)
{
    const Qbf q = parse_qbf(read_text_file(in), in);
    const auto word = qbf_word(q);
    for (std::size_t i = 0; i < word.size(); ++i)
        std::cout << (i ? " " : "") << word[i];
    std::cout << "\n";
    const bool truth = eval_qbf(q);
    std::cout << "value: " << (truth ? "true" : "false") << "\n";
    return truth ? kYes : kNo;
}

std::vector<bool> parse_bits(const std::string& s)
{
    std::vector<bool> out;
    for (char c : s) {
        if (c != '0' && c != '1')
            throw ValidationError("--bits takes a string of 0 and 1");
        out.push_back(c == '1');
    }
    return out;
}

int cmd_circuit2sc(const std::string& in, const std::string& bits, const Out& out)
{
    const Circuit c = parse_circuit(read_text_file(in), in);
    const Program p = circuit_to_sc_async(c);
    out.emit(serialize_program(p));
    if (bits.empty())
        return kYes;
    const auto b = parse_bits(bits);
    const bool direct = eval_circuit(c, b);
    const bool prog = circuit_async_accepts(c, b);
    std::cerr << "circuit: " << (direct ? 1 : 0) << "  program: " << (prog ? "accepts" : "does not accept") << "\n";
    return prog ? kYes : kNo;
}

int cmd_word2sc(const std::string& in, int len, const std::string& word, const Out& out)
{
    const Program p = load_program(in);
    const Program sc = msc_word_to_sc(p, len);
    out.emit(serialize_program(sc));
    if (word.empty())
        return kYes;
    const auto w = split_word(word);
    if (static_cast<int>(w.size()) != len)
        throw ValidationError("--word must have --len letters");
    const Verdict v = run(sc, word_to_sc_model(p, w));
    std::cerr << "on the word: " << v.str() << "\n";
    return v.accepted() ? kYes : kNo;
}

int cmd_sat(const std::string& in, bool async)
{
    const Program p = load_program(in);
    const auto r = async || p.semantics == Semantics::Async ? sc_async_sat(p) : sc_sat(p);
    if (!r) {
        std::cout << "unsatisfiable\n";
        return kNo;
    }
    std::cout << "satisfiable: {";
    bool first = true;
    for (const auto& x : *r) {
        std::cout << (first ? "" : ", ") << x;
        first = false;
    }
    std::cout << "}\n";
    return kYes;
}

// ---------------------------------------------------------------- bisim

int cmd_bisim(const std::string& a, const std::string& b, const std::string& kind, int rounds)
{
    const bool r = check_bisimilar(load_model(a), load_model(b), parse_bisim_kind(kind),
                                   rounds < 0 ? std::nullopt : std::optional<int>(rounds));
    std::cout << (r ? "true" : "false") << "\n";
    return r ? kYes : kNo;
}

// ---------------------------------------------------------------- fsg

Fragment parse_fragment(const std::string& s)
{
    if (s == "SC")
        return Fragment::SC;
    if (s == "MSC")
        return Fragment::MSC;
    if (s == "GMSC")
        return Fragment::GMSC;
    if (s == "GGMSC")
        return Fragment::GGMSC;
    throw ValidationError("unknown fragment '" + s + "'");
}

std::vector<std::string> props_of(const std::vector<PointedModel>& ms)
{
    std::set<std::string> ps;
    for (const auto& m : ms)
        ps.insert(m.model.props.begin(), m.model.props.end());
    return {ps.begin(), ps.end()};
}

struct OracleArgs {
    std::vector<std::string> left, right;
    int size = 3;
    std::string fragment = "MSC";
    int max_vars = 2;
    int max_threshold = 1;
    long max_candidates = 20000000;
};

int cmd_fsg_oracle(const OracleArgs& a)
{
    std::vector<PointedModel> A, B;
    for (const auto& f : a.left)
        A.push_back(load_model(f));
    for (const auto& f : a.right)
        B.push_back(load_model(f));
    std::vector<PointedModel> all = A;
    all.insert(all.end(), B.begin(), B.end());
    OracleBounds bounds;
    bounds.max_vars = a.max_vars;
    bounds.max_threshold = a.max_threshold;
    bounds.max_candidates = a.max_candidates;
    const auto p = separation_oracle(A, B, a.size, props_of(all), parse_fragment(a.fragment), bounds);
    if (!p) {
        std::cout << "no separating program of size <= " << a.size << "\n";
        return kNo;
    }
    std::cout << "# size " << program_size(*p) << "\n" << serialize_program(*p);
    return kYes;
}

struct FsgPlayArgs {
    std::string program;
    std::vector<std::string> left, right;
    std::string as = "delilah";
    int budget = -1;
    int max_clock = -1;
    unsigned seed = 1;
};

std::string move_text(const FsgMove& m)
{
    std::ostringstream os;
    os << fsg_move_name(m.kind);
    switch (m.kind) {
    case FsgMoveKind::Or:
    case FsgMoveKind::And: os << " parts " << m.first.size() << "/" << m.second.size(); break;
    case FsgMoveKind::Sig:
        os << " " << (m.symbol.op == Op::Top ? "T" : m.symbol.op == Op::Bottom ? "F" : m.symbol.name);
        break;
    case FsgMoveKind::Var: os << " " << m.var << (m.challenge ? " challenged" : ""); break;
    case FsgMoveKind::Neg: break;
    default: {
        os << m.threshold << " f={";
        for (std::size_t i = 0; i < m.samson_function.size(); ++i) {
            os << (i ? " " : "") << "@" << m.samson_function[i].from.pointed.point << "->";
            for (int u : m.samson_function[i].to)
                os << u << ",";
        }
        os << "} g={";
        for (std::size_t i = 0; i < m.delilah_function.size(); ++i) {
            os << (i ? " " : "") << "@" << m.delilah_function[i].from.pointed.point << "->";
            for (int u : m.delilah_function[i].to)
                os << u << ",";
        }
        os << "} pick " << m.delilah_pick.size();
        if (!m.samson_replies.empty()) {
            os << " replies";
            for (const auto& r : m.samson_replies) {
                os << " ";
                for (int u : r)
                    os << u << ",";
            }
        }
    }
    }
    return os.str();
}

// Asks the human to pick one option; nullopt on quit.
std::optional<std::size_t> ask(const std::string& who, const std::vector<std::string>& options)
{
    if (options.size() == 1)
        return 0;
    for (std::size_t i = 0; i < options.size(); ++i)
        std::cout << "  [" << i << "] " << options[i] << "\n";
    while (true) {
        auto line = prompt(who);
        if (!line)
            return std::nullopt;
        if (auto i = menu_choice(*line, options.size()))
            return i;
        std::cout << "pick a number between 0 and " << options.size() - 1 << "\n";
    }
}

int cmd_fsg_play(const FsgPlayArgs& a)
{
    if (a.as != "samson" && a.as != "delilah" && a.as != "none")
        throw ValidationError("--as takes samson, delilah or none");
    const Program p = load_program(a.program);
    std::vector<PointedModel> A, Bm;
    for (const auto& f : a.left)
        A.push_back(load_model(f));
    for (const auto& f : a.right)
        Bm.push_back(load_model(f));
    std::vector<PointedModel> all = A;
    all.insert(all.end(), Bm.begin(), Bm.end());
    UniformSamson samson(p);
    const ClockedClass Ac = samson.clock_models(A);
    int max_clock = a.max_clock;
    if (max_clock < 0)
        for (const auto& m : Ac)
            max_clock = std::max(max_clock, m.clock);
    const ClockedClass Bc = fully_clocked(Bm, std::max(0, max_clock));
    const int budget = a.budget >= 0 ? a.budget : fsg_peak_resources(p);
    FsgPosition pos = fsg_start(Ac, Bc, samson.roots(), samson.left0(Ac), budget, props_of(all));
    samson.begin(pos);
    DelilahAdvisor advisor;
    std::mt19937 rng(a.seed);
    FsgMoveSpace space;
    space.vars = p.variables;
    space.max_threshold = 2;
    space.global = p.fragment == Fragment::GGMSC;
    const bool human_s = a.as == "samson";
    const bool human_d = a.as == "delilah";

    while (!pos.finished()) {
        std::cout << pos.describe();
        // Delilah picks the node.
        int v = pos.U.front();
        auto advised = advisor.choose_node(pos);
        if (human_d) {
            std::vector<std::string> opts;
            for (int u : pos.U)
                opts.push_back("node " + std::to_string(u));
            auto i = ask("Delilah: node", opts);
            if (!i)
                return kNo;
            v = pos.U[*i];
        } else if (advised) {
            v = *advised;
        } else {
            v = pos.U[std::uniform_int_distribution<std::size_t>(0, pos.U.size() - 1)(rng)];
        }
        // Samson's part.
        FsgMove mv;
        if (human_s) {
            const auto moves = fsg_samson_moves(pos, v, space);
            std::vector<std::string> opts;
            for (const auto& m : moves)
                opts.push_back(move_text(m));
            auto i = ask("Samson: move", opts);
            if (!i)
                return kNo;
            mv = moves[*i];
        } else {
            mv = samson.move(pos, v);
        }
        // Delilah's part.
        if (human_d) {
            const auto done = fsg_delilah_completions(pos, v, mv);
            std::vector<std::string> opts;
            for (const auto& m : done)
                opts.push_back(move_text(m));
            auto i = ask("Delilah: choices", opts);
            if (!i)
                return kNo;
            mv = done[*i];
        } else if (advised && *advised == v) {
            advisor.complete(pos, v, mv);
        } else {
            const auto done = fsg_delilah_completions(pos, v, mv);
            mv = done[std::uniform_int_distribution<std::size_t>(0, done.size() - 1)(rng)];
        }
        // Samson's replies.
        if (human_s) {
            const auto reps = fsg_samson_replies(mv);
            std::vector<std::string> opts;
            for (const auto& m : reps)
                opts.push_back(move_text(m));
            auto i = ask("Samson: replies", opts);
            if (!i)
                return kNo;
            mv = reps[*i];
        } else {
            samson.reply(pos, v, mv);
        }
        std::cout << "at node " << v << ": " << move_text(mv) << "\n";
        try {
            pos = fsg_apply(pos, v, mv);
        } catch (const IllegalMove& e) {
            std::cout << e.what() << "\n";
            continue;
        }
        if (!human_s)
            samson.observe(pos);
    }
    std::cout << pos.describe();
    return *pos.winner == FsgPlayer::Samson ? kYes : kNo;
}

}  // namespace

int main(int argc, char** argv)
{
    CLI::App app{"Kripke-model programs: evaluation, games, compilers and reductions"};
    app.footer(kGrammar);
    app.require_subcommand(1);
    app.fallthrough();  // --seed may follow the subcommand
    unsigned seed = 1;
    app.add_option("--seed", seed, "seed for randomized choices");
    std::function<int()> action;

    CheckArgs ca;
    auto* check = app.add_subcommand("check", "run a program on a pointed model");
    check->add_option("model", ca.model, "model file (.km)")->required();
    check->add_option("program", ca.program, "program file (.msc)")->required();
    check->add_option("--game", ca.game, "decide by a semantic game: standard, async or global");
    check->add_flag("--async", ca.async, "use the asynchronous game");
    check->add_flag("--trace", ca.trace, "print configurations or the winning strategy");
    check->add_option("--max-rounds", ca.max_rounds, "round cap");
    check->callback([&] { action = [&] { return cmd_check(ca); }; });

    PlayArgs pa;
    auto* play = app.add_subcommand("play", "play a semantic game on the terminal");
    play->add_option("model", pa.model)->required();
    play->add_option("program", pa.program)->required();
    play->add_option("--kind", pa.kind, "standard, async or global");
    play->add_option("--as", pa.as, "your side: eloise, abelard, both or none");
    play->callback([&] { action = [&] { return cmd_play(pa); }; });

    std::string in, word, alphabet, bits;
    Out out;
    int bound = 0, len = 0;
    long fuel = 100000;
    auto* compile = app.add_subcommand("compile", "machine/program compilers");
    compile->require_subcommand(1);
    auto* tm2msc = compile->add_subcommand("tm2msc", "bounded machine to MSC program");
    tm2msc->add_option("machine", in)->required();
    tm2msc->add_option("-o,--output", out.path);
    tm2msc->callback([&] { action = [&] { return cmd_tm2msc(in, out); }; });
    auto* msc2tm = compile->add_subcommand("msc2tm", "program to bounded machine");
    msc2tm->add_option("program", in)->required();
    msc2tm->add_option("--bound", bound, "padding bound k")->required();
    msc2tm->add_option("--alphabet", alphabet, "input letters, comma separated");
    msc2tm->add_option("-o,--output", out.path);
    msc2tm->callback([&] { action = [&] { return cmd_msc2tm(in, bound, alphabet, out); }; });

    auto* meta = app.add_subcommand("meta", "machine and word to program and model");
    meta->add_option("machine", in)->required();
    meta->add_option("word", word, "letters, separated by spaces unless single characters")->required();
    meta->add_option("--fuel", fuel, "step limit for the machine");
    meta->callback([&] { action = [&] { return cmd_meta(in, word, fuel); }; });

    auto* reduce = app.add_subcommand("reduce", "reductions");
    reduce->require_subcommand(1);
    auto* q2w = reduce->add_subcommand("qbf2word", "encode a QBF for the QBF machine");
    q2w->add_option("qbf", in)->required();
    q2w->callback([&] { action = [&] { return cmd_qbf2word(in); }; });
    auto* c2s = reduce->add_subcommand("circuit2sc", "circuit to asynchronous SC program");
    c2s->add_option("circuit", in)->required();
    c2s->add_option("--bits", bits, "also decide the program on these input bits");
    c2s->add_option("-o,--output", out.path);
    c2s->callback([&] { action = [&] { return cmd_circuit2sc(in, bits, out); }; });
    auto* w2s = reduce->add_subcommand("word2sc", "MSC program on words of length n to SC");
    w2s->add_option("program", in)->required();
    w2s->add_option("--len", len, "word length n")->required();
    w2s->add_option("--word", word, "also decide the SC program on this word");
    w2s->add_option("-o,--output", out.path);
    w2s->callback([&] { action = [&] { return cmd_word2sc(in, len, word, out); }; });

    bool async = false;
    auto* sat = app.add_subcommand("sat", "satisfiability of an SC program");
    sat->add_option("program", in)->required();
    sat->add_flag("--async", async, "asynchronous semantics");
    sat->callback([&] { action = [&] { return cmd_sat(in, async); }; });

    std::string ma, mb, kind = "global";
    int rounds = -1;
    auto* bisim = app.add_subcommand("bisim", "bisimilarity of two pointed models");
    bisim->add_option("a", ma)->required();
    bisim->add_option("b", mb)->required();
    bisim->add_option("--kind", kind, "plain, counting or global");
    bisim->add_option("--rounds", rounds, "bounded rounds (default: unbounded)");
    bisim->callback([&] { action = [&] { return cmd_bisim(ma, mb, kind, rounds); }; });

    auto* fsg = app.add_subcommand("fsg", "formula size game");
    fsg->require_subcommand(1);
    OracleArgs oa;
    std::string oa_a, oa_b;
    auto* oracle = fsg->add_subcommand("oracle", "smallest separating program by enumeration");
    oracle->add_option("left", oa_a, "model Samson must accept (comma separated list)")->required();
    oracle->add_option("right", oa_b, "model that must be rejected (comma separated list)")->required();
    oracle->add_option("--size", oa.size, "size budget k");
    oracle->add_option("--fragment", oa.fragment, "SC, MSC, GMSC or GGMSC");
    oracle->add_option("--max-vars", oa.max_vars);
    oracle->add_option("--max-threshold", oa.max_threshold);
    oracle->add_option("--max-candidates", oa.max_candidates);
    oracle->callback([&] {
        oa.left = split_csv(oa_a);
        oa.right = split_csv(oa_b);
        action = [&] { return cmd_fsg_oracle(oa); };
    });
    FsgPlayArgs fa;
    std::string fa_l, fa_r;
    auto* fplay = fsg->add_subcommand("play", "replay the game; the program drives Samson");
    fplay->add_option("--program", fa.program)->required();
    fplay->add_option("--left", fa_l, "Samson's models (comma separated)")->required();
    fplay->add_option("--right", fa_r, "Delilah's models (comma separated)")->required();
    fplay->add_option("--as", fa.as, "your side: samson, delilah or none");
    fplay->add_option("--budget", fa.budget, "resource bound k (default: the program's peak)");
    fplay->add_option("--max-clock", fa.max_clock, "clocks given to Delilah's models");
    fplay->callback([&] {
        fa.left = split_csv(fa_l);
        fa.right = split_csv(fa_r);
        fa.seed = seed;
        action = [&] { return cmd_fsg_play(fa); };
    });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 2;
    }
    try {
        return action ? action() : 2;
    } catch (const ParseError& e) {
        std::cerr << e.what() << "\n";
    } catch (const Error& e) {
        std::cerr << "error: " << e.what() << "\n";
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
    }
    return 2;
}
