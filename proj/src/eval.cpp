#include "msc/eval.hpp"

#include <bit>
#include <map>

#include "msc/errors.hpp"

namespace msc {

GlobalConfiguration::GlobalConfiguration(int nodes, int width)
    : nodes_(nodes), width_(width), words_((width + 63) / 64),
      bits_(static_cast<std::size_t>(nodes) * static_cast<std::size_t>((width + 63) / 64), 0)
{
}

bool GlobalConfiguration::get(int node, int var) const
{
    return (bits_[static_cast<std::size_t>(node * words_ + var / 64)] >> (var % 64)) & 1U;
}

void GlobalConfiguration::set(int node, int var, bool value)
{
    auto& w = bits_[static_cast<std::size_t>(node * words_ + var / 64)];
    const std::uint64_t bit = std::uint64_t{1} << (var % 64);
    w = value ? (w | bit) : (w & ~bit);
}

bool GlobalConfiguration::empty() const
{
    for (auto w : bits_)
        if (w)
            return false;
    return true;
}

std::vector<int> GlobalConfiguration::row(int node) const
{
    std::vector<int> out;
    for (int v = 0; v < width_; ++v)
        if (get(node, v))
            out.push_back(v);
    return out;
}

std::string GlobalConfiguration::str(const std::vector<std::string>& names) const
{
    std::string s;
    for (int v = 0; v < nodes_; ++v) {
        if (v)
            s += ' ';
        s += '{';
        bool first = true;
        for (int x : row(v)) {
            if (!first)
                s += ',';
            first = false;
            s += names[static_cast<std::size_t>(x)];
        }
        s += '}';
    }
    return s;
}

std::string Verdict::str() const
{
    switch (kind) {
    case Kind::Accepted: return "AcceptedAt " + std::to_string(round) + (tie ? " (tie with rejection)" : "");
    case Kind::Rejected: return "RejectedAt " + std::to_string(round);
    case Kind::NeverAccepts:
        return "NeverAccepts preperiod " + std::to_string(preperiod) + " period " + std::to_string(period);
    }
    return "?";
}

bool eval_schema(const KripkeModel& m, const GlobalConfiguration& g, int node, const Schema& s,
                 const std::vector<std::string>& vars)
{
    switch (s->op) {
    case Op::Bottom: return false;
    case Op::Top: return true;
    case Op::Prop: return m.holds(node, s->name);
    case Op::Var: {
        for (std::size_t i = 0; i < vars.size(); ++i)
            if (vars[i] == s->name)
                return g.get(node, static_cast<int>(i));
        throw ValidationError("variable '" + s->name + "' is not among the configuration's predicates");
    }
    case Op::Not: return !eval_schema(m, g, node, s->left, vars);
    case Op::Or: return eval_schema(m, g, node, s->left, vars) || eval_schema(m, g, node, s->right, vars);
    case Op::And: return eval_schema(m, g, node, s->left, vars) && eval_schema(m, g, node, s->right, vars);
    default: break;
    }
    int sat = 0;
    int total = 0;
    auto visit = [&](int u) {
        ++total;
        if (eval_schema(m, g, u, s->left, vars))
            ++sat;
    };
    if (is_global(s->op)) {
        for (int u = 0; u < m.node_count; ++u)
            visit(u);
    } else {
        for (auto [a, b] : m.edges)
            if (a == node)
                visit(b);
    }
    if (s->op == Op::Dia || s->op == Op::GDia)
        return sat >= s->threshold;
    return total - sat < s->threshold;
}

namespace {

using Word = std::uint64_t;

inline bool test_bit(const Word* w, int i) { return (w[i / 64] >> (i % 64)) & 1U; }
inline void put_bit(Word* w, int i) { w[i / 64] |= Word{1} << (i % 64); }

int popcount_and(const Word* a, const Word* b, int words)
{
    int c = 0;
    for (int i = 0; i < words; ++i)
        c += std::popcount(a[i] & b[i]);
    return c;
}

}  // namespace

Evaluator::Evaluator(const Program& p, const KripkeModel& m)
    : prog_(p), model_(m), n_(m.node_count), words_(std::max(1, (m.node_count + 63) / 64))
{
    const auto W = static_cast<std::size_t>(words_);
    full_.assign(W, 0);
    for (int v = 0; v < n_; ++v)
        put_bit(full_.data(), v);
    pred_masks_.assign(static_cast<std::size_t>(n_) * W, 0);
    succ_masks_.assign(static_cast<std::size_t>(n_) * W, 0);
    for (auto [a, b] : m.edges) {
        put_bit(&pred_masks_[static_cast<std::size_t>(b) * W], a);
        put_bit(&succ_masks_[static_cast<std::size_t>(a) * W], b);
    }
    compile();
    prop_bits_.assign(prop_names_.size() * W, 0);
    for (std::size_t i = 0; i < prop_names_.size(); ++i)
        for (int v = 0; v < n_; ++v)
            if (m.holds(v, prop_names_[i]))
                put_bit(&prop_bits_[i * W], v);
}

int Evaluator::intern(const Schema& s)
{
    Node nd{s->op, s->threshold, -1, -1};
    switch (s->op) {
    case Op::Prop: {
        auto it = std::find(prop_names_.begin(), prop_names_.end(), s->name);
        nd.a = static_cast<int>(it - prop_names_.begin());
        if (it == prop_names_.end())
            prop_names_.push_back(s->name);
        break;
    }
    case Op::Var: nd.a = prog_.index_of(s->name); break;
    case Op::Bottom:
    case Op::Top: break;
    default:
        nd.a = intern(s->left);
        if (s->right)
            nd.b = intern(s->right);
    }
    // Hash-consing: children are interned first, so ids are a topological order.
    auto key = std::make_tuple(static_cast<int>(nd.op), nd.k, nd.a, nd.b);
    auto [it, fresh] = intern_table_.emplace(key, static_cast<int>(dag_.size()));
    if (fresh)
        dag_.push_back(nd);
    return it->second;
}

void Evaluator::compile()
{
    for (std::size_t i = 0; i < prog_.size(); ++i) {
        base_roots_.push_back(intern(prog_.base[i]));
        ind_roots_.push_back(intern(prog_.induction[i]));
    }
    intern_table_.clear();
}

void Evaluator::eval_all(const State& vars, std::vector<Word>& out) const
{
    const int W = words_;
    out.assign(dag_.size() * static_cast<std::size_t>(W), 0);
    std::vector<Word> tmp(static_cast<std::size_t>(W));
    std::vector<Word> dia(static_cast<std::size_t>(W));
    for (std::size_t id = 0; id < dag_.size(); ++id) {
        const Node& nd = dag_[id];
        Word* r = &out[id * static_cast<std::size_t>(W)];
        const Word* a = nd.a >= 0 ? &out[static_cast<std::size_t>(nd.a) * static_cast<std::size_t>(W)] : nullptr;
        const Word* b = nd.b >= 0 ? &out[static_cast<std::size_t>(nd.b) * static_cast<std::size_t>(W)] : nullptr;
        switch (nd.op) {
        case Op::Bottom: break;
        case Op::Top: std::copy(full_.begin(), full_.end(), r); break;
        case Op::Prop: std::copy_n(&prop_bits_[static_cast<std::size_t>(nd.a * W)], W, r); break;
        case Op::Var:
            // Round 0 evaluates the whole DAG; base bodies never contain variables, so
            // the induction part computed here is simply discarded.
            if (!vars.empty())
                std::copy_n(&vars[static_cast<std::size_t>(nd.a * W)], W, r);
            break;
        case Op::Not:
            for (int i = 0; i < W; ++i)
                r[i] = ~a[i] & full_[static_cast<std::size_t>(i)];
            break;
        case Op::Or:
            for (int i = 0; i < W; ++i)
                r[i] = a[i] | b[i];
            break;
        case Op::And:
            for (int i = 0; i < W; ++i)
                r[i] = a[i] & b[i];
            break;
        case Op::Dia:
        case Op::Box: {
            // □<k φ is ¬◇≥k ¬φ; both reduce to counting successors in a target set.
            const Word* target = a;
            if (nd.op == Op::Box) {
                for (int i = 0; i < W; ++i)
                    tmp[static_cast<std::size_t>(i)] = ~a[i] & full_[static_cast<std::size_t>(i)];
                target = tmp.data();
            }
            std::fill(dia.begin(), dia.end(), 0);
            if (nd.k == 1) {
                for (int i = 0; i < W; ++i)
                    for (Word bits = target[i]; bits; bits &= bits - 1) {
                        const int u = i * 64 + std::countr_zero(bits);
                        const Word* pm = &pred_masks_[static_cast<std::size_t>(u * W)];
                        for (int j = 0; j < W; ++j)
                            dia[static_cast<std::size_t>(j)] |= pm[j];
                    }
            } else {
                for (int v = 0; v < n_; ++v)
                    if (popcount_and(&succ_masks_[static_cast<std::size_t>(v * W)], target, W) >= nd.k)
                        put_bit(dia.data(), v);
            }
            for (int i = 0; i < W; ++i)
                r[i] = nd.op == Op::Dia ? dia[static_cast<std::size_t>(i)]
                                        : ~dia[static_cast<std::size_t>(i)] & full_[static_cast<std::size_t>(i)];
            break;
        }
        case Op::GDia:
        case Op::GBox: {
            int c = popcount_and(a, full_.data(), W);
            bool t = nd.op == Op::GDia ? c >= nd.k : n_ - c < nd.k;
            if (t)
                std::copy(full_.begin(), full_.end(), r);
            break;
        }
        }
    }
}

Evaluator::State Evaluator::initial() const
{
    std::vector<Word> scratch;
    eval_all({}, scratch);
    const auto W = static_cast<std::size_t>(words_);
    State s(prog_.size() * W);
    for (std::size_t i = 0; i < prog_.size(); ++i)
        std::copy_n(&scratch[static_cast<std::size_t>(base_roots_[i]) * W], W, &s[i * W]);
    return s;
}

Evaluator::State Evaluator::step(const State& cur) const
{
    std::vector<Word> scratch;
    eval_all(cur, scratch);
    const auto W = static_cast<std::size_t>(words_);
    State s(prog_.size() * W);
    for (std::size_t i = 0; i < prog_.size(); ++i)
        std::copy_n(&scratch[static_cast<std::size_t>(ind_roots_[i]) * W], W, &s[i * W]);
    return s;
}

bool Evaluator::holds(const State& s, int var, int node) const
{
    return test_bit(&s[static_cast<std::size_t>(var * words_)], node);
}

bool Evaluator::any_accepting(const State& s, int node) const
{
    for (int x : prog_.accepting)
        if (holds(s, x, node))
            return true;
    return false;
}

bool Evaluator::any_rejecting(const State& s, int node) const
{
    for (int x : prog_.rejecting)
        if (holds(s, x, node))
            return true;
    return false;
}

GlobalConfiguration Evaluator::to_config(const State& s) const
{
    GlobalConfiguration g(n_, static_cast<int>(prog_.size()));
    for (std::size_t x = 0; x < prog_.size(); ++x)
        for (int v = 0; v < n_; ++v)
            if (holds(s, static_cast<int>(x), v))
                g.set(v, static_cast<int>(x));
    return g;
}

Evaluator::State Evaluator::from_config(const GlobalConfiguration& g) const
{
    if (g.nodes() != n_ || g.width() != static_cast<int>(prog_.size()))
        throw ValidationError("configuration does not fit the program and model");
    const auto W = static_cast<std::size_t>(words_);
    State s(prog_.size() * W, 0);
    for (std::size_t x = 0; x < prog_.size(); ++x)
        for (int v = 0; v < n_; ++v)
            if (g.get(v, static_cast<int>(x)))
                put_bit(&s[x * W], v);
    return s;
}

GlobalConfiguration initial_config(const Program& p, const KripkeModel& m)
{
    Evaluator ev(p, m);
    return ev.to_config(ev.initial());
}

GlobalConfiguration step(const Program& p, const KripkeModel& m, const GlobalConfiguration& g)
{
    Evaluator ev(p, m);
    return ev.to_config(ev.step(ev.from_config(g)));
}

std::vector<GlobalConfiguration> trace_run(const Program& p, const KripkeModel& m, long rounds)
{
    Evaluator ev(p, m);
    std::vector<GlobalConfiguration> out;
    auto s = ev.initial();
    out.push_back(ev.to_config(s));
    for (long r = 0; r < rounds; ++r) {
        s = ev.step(s);
        out.push_back(ev.to_config(s));
    }
    return out;
}

Verdict run(const Program& p, const PointedModel& pm, std::optional<long> max_rounds)
{
    if (p.semantics != Semantics::Sync)
        throw ValidationError("run needs a synchronous program");
    Evaluator ev(p, pm.model);
    const int w = pm.point;
    auto event = [&](const Evaluator::State& s, long round) -> std::optional<Verdict> {
        bool acc = ev.any_accepting(s, w);
        bool rej = ev.any_rejecting(s, w);
        if (acc)
            return Verdict{Verdict::Kind::Accepted, round, 0, 0, rej};
        if (rej)
            return Verdict{Verdict::Kind::Rejected, round, 0, 0, false};
        return std::nullopt;
    };
    // The sequence g_0, g_1, ... is eventually periodic. Brent's cycle finder keeps two
    // configurations in memory instead of every visited one; every round up to the first
    // detected repetition is checked for events, which covers all distinct configurations.
    const long bits = static_cast<long>(pm.model.node_count) * static_cast<long>(p.size());
    const long backstop = bits < 62 ? (1L << bits) : -1;
    Evaluator::State tortoise = ev.initial();
    if (auto v = event(tortoise, 0))
        return *v;
    Evaluator::State hare = ev.step(tortoise);
    long round = 1;
    long power = 1;
    long lam = 1;
    while (true) {
        if (auto v = event(hare, round))
            return *v;
        if (hare == tortoise)
            break;
        if (max_rounds && round >= *max_rounds)
            throw UndeterminedError(*max_rounds);
        if (backstop > 0 && round > backstop)
            throw Error("configuration sequence exceeded 2^(|W||T|) rounds without repeating");
        if (power == lam) {
            tortoise = hare;
            power *= 2;
            lam = 0;
        }
        hare = ev.step(hare);
        ++round;
        ++lam;
    }
    // lam is the period; find the preperiod by walking two pointers lam apart.
    Evaluator::State a = ev.initial();
    Evaluator::State b = a;
    for (long i = 0; i < lam; ++i)
        b = ev.step(b);
    long mu = 0;
    while (a != b) {
        a = ev.step(a);
        b = ev.step(b);
        ++mu;
    }
    return Verdict{Verdict::Kind::NeverAccepts, 0, mu, lam, false};
}

Verdict k_accepts(const Program& p, const std::vector<std::string>& word, int k, std::optional<long> max_rounds)
{
    return run(p, extended_word_model(word, k), max_rounds);
}

}  // namespace msc
