#include "msc/mcl.hpp"

#include <functional>
#include <map>
#include <set>

#include "msc/arena.hpp"
#include "msc/errors.hpp"

namespace msc {

namespace {

Mcl make(MOp op, int k, std::string name, Mcl l, Mcl r)
{
    auto n = std::make_shared<MclNode>();
    n->op = op;
    n->threshold = k;
    n->name = std::move(name);
    n->left = std::move(l);
    n->right = std::move(r);
    return n;
}

}  // namespace

Mcl m_bot()
{
    static const Mcl b = make(MOp::Bottom, 0, "", nullptr, nullptr);
    return b;
}

Mcl m_top()
{
    static const Mcl t = make(MOp::Top, 0, "", nullptr, nullptr);
    return t;
}

Mcl m_prop(const std::string& p) { return make(MOp::Prop, 0, p, nullptr, nullptr); }
Mcl m_not(Mcl a) { return make(MOp::Not, 0, "", std::move(a), nullptr); }
Mcl m_or(Mcl a, Mcl b) { return make(MOp::Or, 0, "", std::move(a), std::move(b)); }
Mcl m_and(Mcl a, Mcl b) { return make(MOp::And, 0, "", std::move(a), std::move(b)); }

Mcl m_modal(MOp op, int k, Mcl a)
{
    if (k < 1)
        throw ValidationError("modal threshold must be at least 1");
    if (op != MOp::Dia && op != MOp::Box && op != MOp::GDia && op != MOp::GBox)
        throw ValidationError("not a modal operator");
    return make(op, k, "", std::move(a), nullptr);
}

Mcl m_label(const std::string& name, Mcl a) { return make(MOp::Label, 0, name, std::move(a), nullptr); }
Mcl m_claim(const std::string& name) { return make(MOp::Claim, 0, name, nullptr, nullptr); }

bool mcl_equal(const Mcl& a, const Mcl& b)
{
    if (a == b)
        return true;
    if (!a || !b)
        return false;
    if (a->op != b->op || a->threshold != b->threshold || a->name != b->name)
        return false;
    return mcl_equal(a->left, b->left) && mcl_equal(a->right, b->right);
}

namespace {

void print(const Mcl& f, std::string& out)
{
    switch (f->op) {
    case MOp::Bottom: out += "F"; return;
    case MOp::Top: out += "T"; return;
    case MOp::Prop: out += f->name; return;
    case MOp::Claim: out += "@" + f->name; return;
    case MOp::Not:
        out += "!";
        print(f->left, out);
        return;
    case MOp::Or:
    case MOp::And:
        out += "(";
        print(f->left, out);
        out += f->op == MOp::Or ? " | " : " & ";
        print(f->right, out);
        out += ")";
        return;
    case MOp::Label:
        out += "L:" + f->name + "(";
        print(f->left, out);
        out += ")";
        return;
    case MOp::Dia: out += "<" + std::to_string(f->threshold) + ">"; break;
    case MOp::Box: out += "[" + std::to_string(f->threshold) + "]"; break;
    case MOp::GDia: out += "<<" + std::to_string(f->threshold) + ">>"; break;
    case MOp::GBox: out += "[[" + std::to_string(f->threshold) + "]]"; break;
    }
    print(f->left, out);
}

}  // namespace

std::string mcl_to_string(const Mcl& f)
{
    std::string out;
    print(f, out);
    return out;
}

int mcl_size(const Mcl& f)
{
    switch (f->op) {
    case MOp::Bottom:
    case MOp::Top: return 0;
    case MOp::Prop:
    case MOp::Claim: return 1;
    case MOp::Not:
    case MOp::Label: return 1 + mcl_size(f->left);
    case MOp::Or:
    case MOp::And: return 1 + mcl_size(f->left) + mcl_size(f->right);
    default: return f->threshold + mcl_size(f->left);
    }
}

MclTree mcl_tree(const Mcl& f)
{
    MclTree t;
    std::function<int(const MclNode*, int)> go = [&](const MclNode* n, int parent) {
        int id = static_cast<int>(t.node.size());
        t.node.push_back(n);
        t.parent.push_back(parent);
        t.children.emplace_back();
        if (parent >= 0)
            t.children[static_cast<std::size_t>(parent)].push_back(id);
        if (n->left)
            go(n->left.get(), id);
        if (n->right)
            go(n->right.get(), id);
        return id;
    };
    go(f.get(), -1);
    return t;
}

std::optional<int> reference_formula(const MclTree& t, int claim)
{
    const std::string& name = t.node[static_cast<std::size_t>(claim)]->name;
    for (int u = t.parent[static_cast<std::size_t>(claim)]; u >= 0; u = t.parent[static_cast<std::size_t>(u)]) {
        const MclNode* n = t.node[static_cast<std::size_t>(u)];
        if (n->op == MOp::Label && n->name == name)
            return u;
    }
    return std::nullopt;
}

std::vector<int> dangling_claims(const Mcl& f)
{
    MclTree t = mcl_tree(f);
    std::vector<int> out;
    for (std::size_t i = 0; i < t.node.size(); ++i)
        if (t.node[i]->op == MOp::Claim && !reference_formula(t, static_cast<int>(i)))
            out.push_back(static_cast<int>(i));
    return out;
}

Winner solve_mcl_game(const PointedModel& pm, const Mcl& f)
{
    const KripkeModel& m = pm.model;
    const MclTree t = mcl_tree(f);
    const int n = m.node_count;
    const auto succ = m.successors();
    const int occs = static_cast<int>(t.node.size());
    auto pos = [&](int ver, int node, int occ) { return (occ * n + node) * 2 + ver; };

    std::vector<ArenaNode> arena(static_cast<std::size_t>(occs * n * 2));
    for (int occ = 0; occ < occs; ++occ) {
        const MclNode* x = t.node[static_cast<std::size_t>(occ)];
        const auto& ch = t.children[static_cast<std::size_t>(occ)];
        std::optional<int> ref;
        if (x->op == MOp::Claim)
            ref = reference_formula(t, occ);
        for (int v = 0; v < n; ++v) {
            for (int ver = 0; ver < 2; ++ver) {
                ArenaNode& a = arena[static_cast<std::size_t>(pos(ver, v, occ))];
                const int fal = 1 - ver;
                switch (x->op) {
                case MOp::Top: a.terminal = ver; break;
                case MOp::Bottom: a.terminal = fal; break;
                case MOp::Prop: a.terminal = m.holds(v, x->name) ? ver : fal; break;
                case MOp::Not: a.succ = {pos(fal, v, ch[0])}; break;
                case MOp::Label: a.succ = {pos(ver, v, ch[0])}; break;
                case MOp::Claim:
                    if (ref)
                        a.succ = {pos(ver, v, *ref)};
                    else
                        a.terminal = ArenaNode::Nobody;
                    break;
                case MOp::Or:
                case MOp::And:
                    a.chooser = x->op == MOp::Or ? ver : fal;
                    a.succ = {pos(ver, v, ch[0]), pos(ver, v, ch[1])};
                    break;
                case MOp::Dia:
                case MOp::Box:
                    a.chooser = x->op == MOp::Dia ? ver : fal;
                    a.k = x->threshold;
                    for (int u : succ[static_cast<std::size_t>(v)])
                        a.succ.push_back(pos(ver, u, ch[0]));
                    break;
                case MOp::GDia:
                case MOp::GBox:
                    a.chooser = x->op == MOp::GDia ? ver : fal;
                    a.k = x->threshold;
                    for (int u = 0; u < n; ++u)
                        a.succ.push_back(pos(ver, u, ch[0]));
                    break;
                }
            }
        }
    }
    ArenaSolution sol = solve_arena(arena);
    return sol.win[static_cast<std::size_t>(pos(0, pm.point, 0))];
}

namespace {

MOp mop_of(Op op)
{
    switch (op) {
    case Op::Dia: return MOp::Dia;
    case Op::Box: return MOp::Box;
    case Op::GDia: return MOp::GDia;
    default: return MOp::GBox;
    }
}

// Schema to MCL with each Var occurrence replaced through `var`, visited left to right.
Mcl convert(const Schema& s, const std::function<Mcl(const std::string&)>& var)
{
    switch (s->op) {
    case Op::Bottom: return m_bot();
    case Op::Top: return m_top();
    case Op::Prop: return m_prop(s->name);
    case Op::Var: return var(s->name);
    case Op::Not: return m_not(convert(s->left, var));
    case Op::Or: {
        Mcl l = convert(s->left, var);
        return m_or(l, convert(s->right, var));
    }
    case Op::And: {
        Mcl l = convert(s->left, var);
        return m_and(l, convert(s->right, var));
    }
    default: return m_modal(mop_of(s->op), s->threshold, convert(s->left, var));
    }
}

// Mutable pseudo-formula used while the translation is running. Atoms are label symbols
// that have not been expanded yet.
struct Build {
    struct Node {
        MOp op = MOp::Bottom;
        int k = 0;
        std::string name;
        std::string pred;       // Label / atom: the predicate it stands for
        std::string subscript;  // Label / atom: the string s of X_s, dot separated
        bool atom = false;
        int left = -1;
        int right = -1;
        int parent = -1;
    };
    std::vector<Node> nodes;

    int add(Node n)
    {
        nodes.push_back(std::move(n));
        return static_cast<int>(nodes.size()) - 1;
    }

    void attach(int parent, int child, bool left)
    {
        nodes[static_cast<std::size_t>(child)].parent = parent;
        (left ? nodes[static_cast<std::size_t>(parent)].left : nodes[static_cast<std::size_t>(parent)].right) = child;
    }

    int from_schema(const Schema& s, const std::function<int(const std::string&)>& var)
    {
        Node n;
        switch (s->op) {
        case Op::Var: return var(s->name);
        case Op::Bottom: n.op = MOp::Bottom; return add(n);
        case Op::Top: n.op = MOp::Top; return add(n);
        case Op::Prop:
            n.op = MOp::Prop;
            n.name = s->name;
            return add(n);
        case Op::Not:
        case Op::Dia:
        case Op::Box:
        case Op::GDia:
        case Op::GBox: {
            n.op = s->op == Op::Not ? MOp::Not : mop_of(s->op);
            n.k = s->threshold;
            int c = from_schema(s->left, var);
            int id = add(n);
            attach(id, c, true);
            return id;
        }
        case Op::Or:
        case Op::And: {
            n.op = s->op == Op::Or ? MOp::Or : MOp::And;
            int l = from_schema(s->left, var);
            int r = from_schema(s->right, var);
            int id = add(n);
            attach(id, l, true);
            attach(id, r, false);
            return id;
        }
        }
        return -1;
    }

    Mcl freeze(int id) const
    {
        const Node& n = nodes[static_cast<std::size_t>(id)];
        switch (n.op) {
        case MOp::Bottom: return m_bot();
        case MOp::Top: return m_top();
        case MOp::Prop: return m_prop(n.name);
        case MOp::Claim: return m_claim(n.name);
        case MOp::Not: return m_not(freeze(n.left));
        case MOp::Label: return m_label(n.name, freeze(n.left));
        case MOp::Or: return m_or(freeze(n.left), freeze(n.right));
        case MOp::And: return m_and(freeze(n.left), freeze(n.right));
        default: return m_modal(n.op, n.k, freeze(n.left));
        }
    }
};

std::string label_name(const std::string& pred, const std::string& subscript)
{
    return subscript.empty() ? pred : pred + "." + subscript;
}

int finish_root(Build& b, const std::vector<int>& atoms)
{
    int root = atoms[0];
    for (std::size_t i = 1; i < atoms.size(); ++i) {
        Build::Node n;
        n.op = MOp::Or;
        int id = b.add(n);
        b.attach(id, root, true);
        b.attach(id, atoms[i], false);
        root = id;
    }
    return root;
}

}  // namespace

Mcl translate_async_program(const Program& p)
{
    p.validate();
    if (p.accepting.empty())
        return m_bot();
    Build b;
    auto new_atom = [&](const std::string& pred, const std::string& subscript) {
        Build::Node n;
        n.op = MOp::Label;
        n.atom = true;
        n.pred = pred;
        n.subscript = subscript;
        n.name = label_name(pred, subscript);
        return b.add(n);
    };
    std::vector<int> roots;
    for (int a : p.accepting)
        roots.push_back(new_atom(p.variables[static_cast<std::size_t>(a)], ""));
    const int root = finish_root(b, roots);

    // Expand atoms depth first, left to right.
    std::function<void(int)> expand = [&](int atom) {
        const std::string X = b.nodes[static_cast<std::size_t>(atom)].pred;
        const std::string s = b.nodes[static_cast<std::size_t>(atom)].subscript;
        const int xi = p.index_of(X);

        // Decide every replacement against the tree as it stands before this expansion.
        std::map<std::string, std::string> claim_of;  // case 3
        std::set<std::string> anywhere;               // predicates with some label or atom
        for (int u = atom; u >= 0; u = b.nodes[static_cast<std::size_t>(u)].parent) {
            const auto& n = b.nodes[static_cast<std::size_t>(u)];
            if (n.op == MOp::Label && !claim_of.count(n.pred))
                claim_of[n.pred] = n.name;
        }
        for (const auto& n : b.nodes)
            if (n.op == MOp::Label)
                anywhere.insert(n.pred);

        std::vector<int> fresh;
        auto var = [&](const std::string& Y) {
            Build::Node n;
            auto it = claim_of.find(Y);
            if (it != claim_of.end()) {
                n.op = MOp::Claim;
                n.name = it->second;
                return b.add(n);
            }
            int id = anywhere.count(Y) ? new_atom(Y, s.empty() ? X : s + "." + X) : new_atom(Y, "");
            fresh.push_back(id);
            return id;
        };
        int base = b.from_schema(p.base[static_cast<std::size_t>(xi)], var);
        int ind = b.from_schema(p.induction[static_cast<std::size_t>(xi)], var);
        Build::Node orn;
        orn.op = MOp::Or;
        int body = b.add(orn);
        b.attach(body, base, true);
        b.attach(body, ind, false);
        b.nodes[static_cast<std::size_t>(atom)].atom = false;
        b.attach(atom, body, true);
        for (int f : fresh)
            expand(f);
    };
    for (int r : roots)
        expand(r);
    return b.freeze(root);
}

Mcl naive_translate(const Program& p)
{
    p.validate();
    if (p.accepting.empty())
        return m_bot();
    // Labels are the predicate names themselves; any predicate that already has a label
    // (expanded or pending) anywhere becomes a claim.
    std::set<std::string> seen;
    std::function<Mcl(const std::string&)> expand = [&](const std::string& X) -> Mcl {
        const int xi = p.index_of(X);
        std::vector<std::string> pending;
        auto var = [&](const std::string& Y) -> Mcl {
            if (seen.count(Y))
                return m_claim(Y);
            seen.insert(Y);
            pending.push_back(Y);
            return m_prop("\x01" + Y);  // placeholder, replaced below
        };
        Mcl base = convert(p.base[static_cast<std::size_t>(xi)], var);
        Mcl ind = convert(p.induction[static_cast<std::size_t>(xi)], var);
        std::map<std::string, Mcl> done;
        for (const auto& Y : pending)
            done[Y] = expand(Y);
        std::function<Mcl(const Mcl&)> fill = [&](const Mcl& f) -> Mcl {
            if (!f)
                return f;
            if (f->op == MOp::Prop && !f->name.empty() && f->name[0] == '\x01')
                return done.at(f->name.substr(1));
            if (!f->left)
                return f;
            return make(f->op, f->threshold, f->name, fill(f->left), fill(f->right));
        };
        return m_label(X, m_or(base, fill(ind)));
    };
    std::vector<Mcl> parts;
    for (int a : p.accepting)
        seen.insert(p.variables[static_cast<std::size_t>(a)]);
    for (int a : p.accepting)
        parts.push_back(expand(p.variables[static_cast<std::size_t>(a)]));
    Mcl out = parts[0];
    for (std::size_t i = 1; i < parts.size(); ++i)
        out = m_or(out, parts[i]);
    return out;
}

}  // namespace msc
