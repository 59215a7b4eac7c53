#pragma once

#include <string>

#include "msc/mcl.hpp"
#include "msc/model.hpp"
#include "msc/program.hpp"
#include "msc/reductions.hpp"
#include "msc/tm.hpp"

namespace msc {

// All parsers throw ParseError (with a span) on malformed text. `file` only feeds the spans.
Program parse_program(const std::string& text, const std::string& file = "");
std::string serialize_program(const Program& p);

// A single schema; names listed in `vars` become variables, every other name a proposition.
Schema parse_schema(const std::string& text, const std::vector<std::string>& vars = {});

PointedModel parse_model(const std::string& text, const std::string& file = "");
std::string serialize_model(const PointedModel& pm);

BoundedTm parse_tm(const std::string& text, const std::string& file = "");
std::string serialize_tm(const BoundedTm& t);

Circuit parse_circuit(const std::string& text, const std::string& file = "");
std::string serialize_circuit(const Circuit& c);

Qbf parse_qbf(const std::string& text, const std::string& file = "");
std::string serialize_qbf(const Qbf& q);

Mcl parse_mcl(const std::string& text, const std::string& file = "");
std::string serialize_mcl(const Mcl& f);

std::string read_text_file(const std::string& path);
void write_text_file(const std::string& path, const std::string& text);

}  // namespace msc
