#pragma once

#include <cstdint>
#include <memory>
#include <set>
#include <string>
#include <vector>

namespace msc {

enum class Op : std::uint8_t { Bottom, Top, Prop, Var, Not, Or, And, Dia, Box, GDia, GBox };

struct SchemaNode;
using Schema = std::shared_ptr<const SchemaNode>;

struct SchemaNode {
    Op op = Op::Bottom;
    int threshold = 0;
    std::string name;
    Schema left;
    Schema right;
};

enum class Fragment : std::uint8_t { SC, MSC, GMSC, GGMSC };

Schema s_bot();
Schema s_top();
Schema s_prop(const std::string& name);
Schema s_var(const std::string& name);
Schema s_not(Schema a);
Schema s_or(Schema a, Schema b);
Schema s_and(Schema a, Schema b);
Schema s_dia(int k, Schema a);
Schema s_box(int k, Schema a);
Schema s_gdia(int k, Schema a);
Schema s_gbox(int k, Schema a);
Schema s_modal(Op op, int k, Schema a);

// Left fold; empty input gives the unit (F for or, T for and).
Schema s_or_all(const std::vector<Schema>& xs);
Schema s_and_all(const std::vector<Schema>& xs);

inline bool is_modal(Op op) { return op == Op::Dia || op == Op::Box || op == Op::GDia || op == Op::GBox; }
inline bool is_global(Op op) { return op == Op::GDia || op == Op::GBox; }
inline bool is_leaf(Op op) { return op == Op::Bottom || op == Op::Top || op == Op::Prop || op == Op::Var; }
inline bool is_binary(Op op) { return op == Op::Or || op == Op::And; }

bool schema_equal(const Schema& a, const Schema& b);
std::string schema_to_string(const Schema& s);

bool is_formula(const Schema& s);
int modal_depth(const Schema& s);
int schema_size(const Schema& s);
int max_threshold(const Schema& s);
void collect_vars(const Schema& s, std::set<std::string>& out);
void collect_props(const Schema& s, std::set<std::string>& out);
Fragment schema_fragment(const Schema& s);
bool fits_fragment(const Schema& s, Fragment f);

const char* fragment_name(Fragment f);
Fragment parse_fragment_name(const std::string& s);
Fragment fragment_join(Fragment a, Fragment b);

// Replace every Var named in the callback's domain; the callback returns nullptr to keep a node.
template <class F>
Schema schema_map_vars(const Schema& s, F&& f);

bool is_strong_nnf(const Schema& s);

}  // namespace msc

#include <functional>

namespace msc {

template <class F>
Schema schema_map_vars(const Schema& s, F&& f)
{
    switch (s->op) {
    case Op::Var: {
        Schema r = f(s->name);
        return r ? r : s;
    }
    case Op::Bottom:
    case Op::Top:
    case Op::Prop:
        return s;
    case Op::Not:
        return s_not(schema_map_vars(s->left, f));
    case Op::Or:
        return s_or(schema_map_vars(s->left, f), schema_map_vars(s->right, f));
    case Op::And:
        return s_and(schema_map_vars(s->left, f), schema_map_vars(s->right, f));
    default:
        return s_modal(s->op, s->threshold, schema_map_vars(s->left, f));
    }
}

}  // namespace msc
