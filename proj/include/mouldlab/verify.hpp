#pragma once

#include <filesystem>
#include <fstream>
#include <functional>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "mouldlab/bch.hpp"
#include "mouldlab/comould.hpp"
#include "mouldlab/compose.hpp"
#include "mouldlab/freealg.hpp"
#include "mouldlab/io.hpp"
#include "mouldlab/mould.hpp"
#include "mouldlab/parallel.hpp"
#include "mouldlab/report.hpp"

namespace mouldlab::verify {

using Task = std::function<std::vector<CheckResult>()>;

inline CheckResult from_shuffle(std::string name, const ShuffleCheckReport& r) {
  return CheckResult{std::move(name), r.passed, r.describe()};
}

inline CheckResult from_series(std::string name, const SeriesReport& r) {
  return CheckResult{std::move(name), r.equal, r.describe()};
}

inline CheckResult from_dsw(std::string name, const DswReport& r) {
  return CheckResult{std::move(name), r.passed, r.describe()};
}

inline CheckResult from_moulds(std::string name, const Mould& a, const Mould& b) {
  const auto d = first_difference(a, b);
  return CheckResult{std::move(name), !d,
                     d ? "differ at " + d->word + ": " + d->lhs.get_str() + " vs " + d->rhs.get_str()
                       : "equal through bound " + std::to_string(std::min(a.bound(), b.bound()))};
}

inline std::vector<Task> mould_identity_tasks(int bound) {
  std::vector<Task> t;
  t.push_back([bound] {
    return std::vector<CheckResult>{from_shuffle("S_N symmetral", check_symmetral(make_S_N(bound))),
                                    from_shuffle("T_N alternal", check_alternal(make_T_N(bound)))};
  });
  t.push_back([bound] {
    return std::vector<CheckResult>{from_shuffle("S_Omega symmetral", check_symmetral(make_S_Omega(2, bound))),
                                    from_shuffle("T_Omega alternal", check_alternal(make_T_Omega(2, bound))),
                                    from_shuffle("U alternal", check_alternal(make_U(bound)))};
  });
  t.push_back([bound] {
    const auto ints = Alphabet::integers();
    return std::vector<CheckResult>{
        from_shuffle("E symmetral", check_symmetral(make_E(ints, bound))),
        from_shuffle("I alternal", check_alternal(make_I(ints, bound))),
        from_moulds("exp(I) = E", mould_exp(make_I(ints, bound)), make_E(ints, bound)),
        from_moulds("e^{I_x} x e^{I_y} = S_Omega",
                    mould_mul(mould_exp(make_I_letter(omega_alphabet(2), Letter{0}, bound)),
                              mould_exp(make_I_letter(omega_alphabet(2), Letter{1}, bound))),
                    make_S_Omega(2, bound)),
        from_moulds("exp(T_N) = S_N", mould_exp(make_T_N(bound)), make_S_N(bound))};
  });
  t.push_back([bound] {
    const Mould s = make_S_N(bound), tn = make_T_N(bound);
    return std::vector<CheckResult>{
        from_moulds("S(S_N) x S_N = 1", mould_mul(mould_antipode(s), s), mould_unit(s.alphabet(), bound)),
        from_moulds("S(T_N) = -T_N", mould_antipode(tn), mould_scale(Rational(-1), tn)),
        from_moulds("S(S(T_N)) = T_N", mould_antipode(mould_antipode(tn)), tn)};
  });
  t.push_back([bound] {
    const Mould tn = make_T_N(bound);
    bool ok = true;
    std::string detail = "closed forms hold";
    for (std::uint32_t a = 1; static_cast<int>(a) <= bound; ++a) {
      if (tn.value(Letters{Letter{a}}) != Rational(1, a)) ok = false, detail = "T^(n1) at n1=" + std::to_string(a);
      for (std::uint32_t b = 1; static_cast<int>(a + b) <= bound; ++b) {
        const Rational expect(Integer(static_cast<long>(a) - static_cast<long>(b)), Integer(2 * a * b * (a + b)));
        Rational e = expect;
        e.canonicalize();
        if (tn.value(Letters{Letter{a}, Letter{b}}) != e) ok = false, detail = "T^(n1 n2) mismatch";
      }
    }
    return std::vector<CheckResult>{{"T_N closed forms", ok, detail}};
  });
  return t;
}

inline std::vector<Task> bch_tasks(int degree) {
  std::vector<Task> t;
  for (int n : {2, 3}) {
    const int d = n == 2 ? degree : std::min(degree, 5);
    t.push_back([n, d] {
      const std::string tag = " (N=" + std::to_string(n) + ", D=" + std::to_string(d) + ")";
      const NcSeries direct = direct_log(n, d);
      const NcSeries dyn = dynkin_log(n, d);
      const NcSeries kim = kimura_log(n, d);
      return std::vector<CheckResult>{
          from_series("dynkin = direct" + tag, compare_series(dyn, direct)),
          from_series("kimura_log = direct" + tag, compare_series(kim, direct)),
          from_series("kimura_product = direct_product" + tag, compare_series(kimura_product(n, d), direct_product(n, d))),
          from_dsw("dsw(dynkin)" + tag, dsw_check(dyn)),
          from_dsw("dsw(kimura_log)" + tag, dsw_check(kim))};
    });
  }
  t.push_back([degree] { return mould_ode_check(2, degree, degree); });
  t.push_back([degree] { return inner_derivation_check(2, degree); });
  t.push_back([degree] {
    const GeneratorFamily b = make_B_family(2, degree);
    std::vector<CheckResult> out;
    for (const auto& [form, label] : {std::pair{BracketForm::right_nested, "right-nested"},
                                      std::pair{BracketForm::left_nested, "left-nested"}}) {
      CheckResult r{std::string("Lie/associative comould relation (") + label + ")", true,
                    "all words of length <= " + std::to_string(degree)};
      for (const auto& w : words_up_to(*b.alphabet(), degree)) {
        const auto rep = bracket_relation_check(b, Word(b.alphabet(), w), form);
        if (!rep.equal) {
          r.passed = false;
          r.detail = render_letters(*b.alphabet(), w) + ": " + rep.describe();
          break;
        }
      }
      out.push_back(std::move(r));
    }
    return out;
  });
  t.push_back([degree] {
    const GeneratorFamily b = make_B_family(2, degree);
    const GeneratorFamily d = make_D_family(degree);
    std::vector<CheckResult> out;
    for (const auto& [name, m] : {std::pair<std::string, Mould>{"T_Omega", make_T_Omega(2, degree)},
                                  std::pair<std::string, Mould>{"U", make_U(degree)}}) {
      out.push_back(from_series("M[B] = MB for " + name, compare_series(lie_expand(m, b, degree), expand(m, b, degree))));
    }
    const Mould tn = make_T_N(degree);
    out.push_back(from_series("M[D] = MD for T_N", compare_series(lie_expand(tn, d, degree), expand(tn, d, degree))));
    return out;
  });
  return t;
}

inline std::vector<Task> compose_tasks(int bound) {
  std::vector<Task> t;
  t.push_back([bound] {
    const Mould u = make_U(bound);
    return std::vector<CheckResult>{from_moulds("S_N odot U = S_Omega", odot(make_S_N(bound), u), make_S_Omega(2, bound)),
                                    from_moulds("T_N odot U = T_Omega", odot(make_T_N(bound), u), make_T_Omega(2, bound)),
                                    from_moulds("S_N odot U solves nabla_1 M = U x M", odot(make_S_N(bound), u),
                                                solve_length_nabla_equation(u, bound))};
  });
  t.push_back([bound] {
    auto r = property_suite(sigma_length(omega_alphabet(2)), length_suite_inputs(bound));
    for (auto& c : r) c.name = "[length] " + c.name;
    return r;
  });
  t.push_back([bound] {
    auto r = property_suite(sigma_letter_sum(), letter_sum_suite_inputs(bound));
    for (auto& c : r) c.name = "[letter-sum] " + c.name;
    return r;
  });
  t.push_back([bound] { return check_U_identities(2, bound); });
  return t;
}

// Golden files: name -> generator of the expected bytes.
inline std::vector<std::pair<std::string, std::function<std::string()>>> golden_files() {
  return {
      {"mould_S_N_w6.json", [] { return io::dump(io::mould_to_json(make_S_N(6))); }},
      {"mould_T_N_w6.json", [] { return io::dump(io::mould_to_json(make_T_N(6))); }},
      {"series_direct_log_2_5.json", [] { return io::dump(io::series_to_json(direct_log(2, 5))); }},
      {"series_direct_log_3_4.json", [] { return io::dump(io::series_to_json(direct_log(3, 4))); }},
      {"compute_kimura_log_2_5.json", [] { return io::dump(io::series_to_json(kimura_log(2, 5))); }},
  };
}

inline std::vector<Task> golden_tasks(const std::filesystem::path& dir) {
  std::vector<Task> t;
  for (const auto& [name, make] : golden_files()) {
    t.push_back([dir, name = name, make = make] {
      std::ifstream in(dir / name, std::ios::binary);
      if (!in) return std::vector<CheckResult>{{"golden " + name, false, "missing file"}};
      std::ostringstream ss;
      ss << in.rdbuf();
      const bool same = ss.str() == make();
      return std::vector<CheckResult>{{"golden " + name, same, same ? "byte-identical" : "content differs"}};
    });
  }
  return t;
}

inline std::vector<Task> suite_tasks(const std::string& suite, int degree,
                                     const std::optional<std::filesystem::path>& golden_dir) {
  std::vector<Task> tasks;
  auto append = [&tasks](std::vector<Task> more) {
    for (auto& m : more) tasks.push_back(std::move(m));
  };
  const bool all = suite == "all";
  if (all || suite == "mould-identities") append(mould_identity_tasks(degree));
  if (all || suite == "bch") append(bch_tasks(degree));
  if (all || suite == "compose") append(compose_tasks(degree));
  if (!all && suite != "mould-identities" && suite != "bch" && suite != "compose") {
    throw DomainError("unknown suite '" + suite + "'");
  }
  if (golden_dir) append(golden_tasks(*golden_dir));
  return tasks;
}

inline std::vector<CheckResult> run_suite(const std::string& suite, int degree,
                                          const std::optional<std::filesystem::path>& golden_dir = std::nullopt) {
  std::vector<CheckResult> out;
  for (auto& group : run_tasks(suite_tasks(suite, degree, golden_dir))) {
    for (auto& r : group) out.push_back(std::move(r));
  }
  return out;
}

}  // namespace mouldlab::verify
