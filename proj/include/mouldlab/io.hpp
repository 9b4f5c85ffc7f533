#pragma once

#include <algorithm>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "mouldlab/freealg.hpp"
#include "mouldlab/mould.hpp"

namespace mouldlab::io {

using json = nlohmann::ordered_json;

// ---------------------------------------------------------------------------
// Series

inline json series_to_json(const NcSeries& p) {
  json terms = json::array();
  for (const auto& [w, c] : p.terms()) {
    terms.push_back(json{{"word", render_gen_word(w, p.generators(), false)}, {"coeff", to_string(c)}});
  }
  return json{{"generators", p.generators()}, {"max_degree", p.max_degree()}, {"terms", std::move(terms)}};
}

inline NcSeries series_from_json(const json& j) {
  NcSeries p(j.at("generators").get<int>(), j.at("max_degree").get<int>());
  for (const auto& t : j.at("terms")) {
    p.add_term(parse_gen_word(t.at("word").get<std::string>()), parse_rational(t.at("coeff").get<std::string>()));
  }
  return p;
}

// One line per nonzero degree: "deg 2: + 1/2 XY - 1/2 YX".
inline std::string series_to_text(const NcSeries& p) {
  std::ostringstream os;
  bool any = false;
  for (int d = 0; d <= p.max_degree(); ++d) {
    const auto& comp = p.component(d);
    bool first = true;
    for (std::size_t i = 0; i < comp.size(); ++i) {
      const Rational& c = comp[i];
      if (c == 0) continue;
      if (first) os << "deg " << d << ":";
      first = false;
      any = true;
      const Rational mag = abs(c);
      os << (c < 0 ? " - " : " + ");
      const std::string word = render_gen_word(p.word_of(d, i), p.generators(), true);
      if (mag != 1 || d == 0) {
        os << to_string(mag);
        if (d > 0) os << ' ' << word;
      } else {
        os << word;
      }
    }
    if (!first) os << '\n';
  }
  if (!any) os << "0\n";
  return os.str();
}

// ---------------------------------------------------------------------------
// Moulds

inline json alphabet_to_json(const Alphabet& a) {
  if (a.is_integer()) return json{{"kind", "integer"}};
  return json{{"kind", "named"}, {"letters", a.names()}};
}

inline AlphabetPtr alphabet_from_json(const json& j) {
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "integer") return Alphabet::integers();
  if (kind == "named") return Alphabet::named(j.at("letters").get<std::vector<std::string>>());
  throw DomainError("unknown alphabet kind '" + kind + "'");
}

// Entries sorted by (grade, lexicographic word); zeros omitted.
inline std::vector<std::pair<Letters, Rational>> sorted_entries(const Mould& m) {
  std::vector<std::pair<Letters, Rational>> out(m.entries().begin(), m.entries().end());
  const Alphabet& a = *m.alphabet();
  std::stable_sort(out.begin(), out.end(),
                   [&a](const auto& x, const auto& y) { return a.grade(x.first) < a.grade(y.first); });
  return out;
}

inline json mould_to_json(const Mould& m) {
  json entries = json::array();
  for (const auto& [w, c] : sorted_entries(m)) {
    entries.push_back(json{{"word", render_letters(*m.alphabet(), w)}, {"coeff", to_string(c)}});
  }
  return json{{"alphabet", alphabet_to_json(*m.alphabet())},
              {"grading", json{{"kind", to_string(m.grading().kind)}, {"bound", m.bound()}}},
              {"entries", std::move(entries)}};
}

inline Mould mould_from_json(const json& j) {
  const AlphabetPtr a = alphabet_from_json(j.at("alphabet"));
  const auto& g = j.at("grading");
  const int bound = g.at("bound").get<int>();
  if (g.at("kind").get<std::string>() != to_string(Grading::natural(*a, bound).kind)) {
    throw DomainError("grading kind does not match the alphabet");
  }
  Mould::Table t;
  for (const auto& e : j.at("entries")) {
    t[parse_letters(*a, e.at("word").get<std::string>())] += parse_rational(e.at("coeff").get<std::string>());
  }
  return Mould(a, bound, std::move(t));
}

inline std::string mould_to_text(const Mould& m) {
  std::ostringstream os;
  for (const auto& [w, c] : sorted_entries(m)) {
    const std::string word = render_letters(*m.alphabet(), w);
    os << (word.empty() ? "()" : word) << " : " << to_string(c) << '\n';
  }
  return os.str();
}

inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace mouldlab::io
