#include "duodiv/specstring.hpp"

#include <array>
#include <charconv>
#include <cmath>
#include <system_error>

#include "duodiv/errors.hpp"

namespace duodiv {

namespace {

struct FamilyGrammar {
  FamilyId id;
  const char* name;
  std::array<const char*, 4> keys;  // canonical order, nullptr-padded
};

constexpr std::array<FamilyGrammar, 7> kGrammar{{
    {FamilyId::poisson, "poisson", {"lambda", nullptr, nullptr, nullptr}},
    {FamilyId::geometric, "geometric", {"p", nullptr, nullptr, nullptr}},
    {FamilyId::exponential, "exponential", {"lambda", nullptr, nullptr, nullptr}},
    {FamilyId::laplacian, "laplacian", {"lambda", nullptr, nullptr, nullptr}},
    {FamilyId::half_normal, "halfnormal", {"sigma", nullptr, nullptr, nullptr}},
    {FamilyId::normal, "normal", {"m", "s", nullptr, nullptr}},
    {FamilyId::trunc_normal, "truncnormal", {"m", "s", "a", "b"}},
}};

const FamilyGrammar& grammar_for_name(const std::string& name) {
  for (const FamilyGrammar& g : kGrammar)
    if (name == g.name) return g;
  throw ParamError("unknown family '" + name + "'");
}

const FamilyGrammar& grammar_for_id(FamilyId id) {
  for (const FamilyGrammar& g : kGrammar)
    if (id == g.id) return g;
  throw ParamError("unknown family id");
}

}  // namespace

double parse_double(const std::string& token) {
  if (token.empty()) throw ParamError("empty number");
  double v = 0.0;
  const char* first = token.data();
  const char* last = first + token.size();
  const auto [ptr, ec] = std::from_chars(first, last, v);
  if (ec != std::errc{} || ptr != last)
    throw ParamError("cannot parse number '" + token + "'");
  if (std::isnan(v)) throw ParamError("NaN is not an accepted parameter value");
  return v;
}

std::string format_double(double v) {
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof buf, v);
  (void)ec;
  return std::string(buf, ptr);
}

FamilySpec parse_family_spec(const std::string& text) {
  const std::size_t colon = text.find(':');
  if (colon == std::string::npos || colon == 0)
    throw ParamError("family spec must look like 'family:key=value,...' (got '" + text + "')");
  const FamilyGrammar& g = grammar_for_name(text.substr(0, colon));

  SourceParams params;
  std::size_t pos = colon + 1;
  while (pos <= text.size()) {
    const std::size_t comma = text.find(',', pos);
    const std::string field =
        text.substr(pos, comma == std::string::npos ? std::string::npos : comma - pos);
    const std::size_t eq = field.find('=');
    if (eq == std::string::npos || eq == 0 || eq + 1 >= field.size())
      throw ParamError("malformed 'key=value' field '" + field + "' in '" + text + "'");
    const std::string key = field.substr(0, eq);
    bool known = false;
    for (const char* k : g.keys) known = known || (k && key == k);
    if (!known) throw ParamError(std::string(g.name) + ": unknown parameter '" + key + "'");
    if (params.count(key)) throw ParamError(std::string(g.name) + ": duplicate key '" + key + "'");
    params[key] = parse_double(field.substr(eq + 1));
    if (comma == std::string::npos) break;
    pos = comma + 1;
  }
  for (const char* k : g.keys)
    if (k && !params.count(k))
      throw ParamError(std::string(g.name) + ": missing parameter '" + k + "'");
  return FamilySpec{g.id, std::move(params)};
}

ExpFamilyMember member_from_spec(const std::string& text) {
  const FamilySpec spec = parse_family_spec(text);
  return make_member(spec.family, spec.params);
}

std::string format_family_spec(FamilyId id, const SourceParams& params) {
  const FamilyGrammar& g = grammar_for_id(id);
  std::string out = g.name;
  char sep = ':';
  for (const char* k : g.keys) {
    if (!k) break;
    const auto it = params.find(k);
    if (it == params.end())
      throw ParamError(std::string(g.name) + ": missing parameter '" + k + "'");
    out += sep;
    out += k;
    out += '=';
    out += format_double(it->second);
    sep = ',';
  }
  return out;
}

std::string format_family_spec(const ExpFamilyMember& member) {
  return format_family_spec(member.family, member.source);
}

}  // namespace duodiv
