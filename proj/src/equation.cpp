#include "qveq/equation.hpp"

#include <sstream>

namespace qveq {

namespace {

// key=value fields after the first ':', comma separated
std::vector<std::pair<std::string, std::string>> parse_fields(const std::string& body) {
  std::vector<std::pair<std::string, std::string>> out;
  std::stringstream ss(body);
  std::string item;
  while (std::getline(ss, item, ',')) {
    const auto eq = item.find('=');
    if (eq == std::string::npos)
      throw std::invalid_argument("function spec: expected key=value, got '" + item + "'");
    out.emplace_back(item.substr(0, eq), item.substr(eq + 1));
  }
  return out;
}

}  // namespace

std::string RationalPoly::str() const {
  if (terms.empty()) return "0";
  std::ostringstream os;
  bool first = true;
  for (const auto& [c, e] : terms) {
    if (!first) os << " + ";
    os << c.get_str() << "*x^" << e;
    first = false;
  }
  return os.str();
}

RationalPoly RationalPoly::parse(const std::string& spec, int degree) {
  const auto colon = spec.find(':');
  const std::string head = spec.substr(0, colon);
  const std::string body = colon == std::string::npos ? "" : spec.substr(colon + 1);

  if (head == "zero") {
    if (!body.empty()) throw std::invalid_argument("function spec: zero takes no fields");
    return RationalPoly{};
  }
  if (head == "monomial") {
    Rat a(1);
    for (const auto& [k, v] : parse_fields(body)) {
      if (k == "a")
        a = rat_from_string(v);
      else
        throw std::invalid_argument("function spec: unknown field '" + k + "'");
    }
    return RationalPoly{{{a, degree}}};
  }
  if (head == "power") {
    Rat a(1);
    int d = -1;
    for (const auto& [k, v] : parse_fields(body)) {
      if (k == "d")
        d = std::stoi(v);
      else if (k == "a")
        a = rat_from_string(v);
      else
        throw std::invalid_argument("function spec: unknown field '" + k + "'");
    }
    if (d < 0) throw std::invalid_argument("function spec: power requires d=");
    return RationalPoly{{{a, d}}};
  }
  if (head == "monomial+power") {
    Rat eps(0);
    int l = -1;
    bool saw_eps = false;
    for (const auto& [k, v] : parse_fields(body)) {
      if (k == "l") {
        l = std::stoi(v);
      } else if (k == "eps") {
        eps = rat_from_string(v);
        saw_eps = true;
      } else {
        throw std::invalid_argument("function spec: unknown field '" + k + "'");
      }
    }
    if (l < 0 || !saw_eps)
      throw std::invalid_argument("function spec: monomial+power requires l= and eps=");
    return RationalPoly{{{Rat(1), degree}, {eps, l}}};
  }
  throw std::invalid_argument("function spec: unknown form '" + head + "'");
}

}  // namespace qveq
