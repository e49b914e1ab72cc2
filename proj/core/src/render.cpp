#include "kstat/render.hpp"

#include "kstat/errors.hpp"

#include <algorithm>

namespace kstat {

RenderFormat parse_render_format(std::string_view name) {
  if (name == "human") return RenderFormat::Human;
  if (name == "latex") return RenderFormat::Latex;
  if (name == "json") return RenderFormat::Json;
  throw invalid_argument("unknown format \"" + std::string(name) + "\" (expected human, latex or json)");
}

std::string symbol_name(SymbolKind kind, unsigned vars, const ExponentVector& w) {
  std::string out(1, symbol_letter(kind));
  if (vars == 1 && w.size() == 1) return out + std::to_string(w[0]);
  return out + to_string(w);
}

namespace {

// One numerator term over the shared denominator: coefficient is an
// integer polynomial in n with positive leading coefficient.
struct TermView {
  bool negative = false;
  NPoly coefficient;
  const Monomial* monomial = nullptr;
};

struct DenominatorView {
  BigInt scalar = 1;
  std::vector<std::pair<long, unsigned>> roots;  // (n - root)^multiplicity
  NPoly residual;                                // left-over factor, empty if 1
  bool is_one() const { return scalar == 1 && roots.empty() && residual.is_constant(); }
};

struct FractionView {
  std::vector<TermView> terms;
  DenominatorView den;
};

NPoly lcm(const NPoly& a, const NPoly& b) {
  return divmod(a * b, gcd(a, b)).first.monic();
}

DenominatorView factor_denominator(NPoly monic, BigInt scalar) {
  DenominatorView view;
  view.scalar = std::move(scalar);
  std::vector<long> candidates;
  const long bound = std::max(64, monic.degree() + 2);
  for (long r = 0; r <= bound; ++r) candidates.push_back(r);
  for (long r = 1; r <= bound; ++r) candidates.push_back(-r);
  for (long r : candidates) {
    if (monic.degree() < 1) break;
    unsigned mult = 0;
    while (monic.degree() >= 1 && monic.evaluate(Rational(r)) == 0) {
      monic = divide_by_linear(monic, Rational(r));
      ++mult;
    }
    if (mult > 0) view.roots.emplace_back(r, mult);
  }
  if (!monic.is_constant()) view.residual = monic;
  return view;
}

template <SymbolKind Kind>
FractionView build_view(const SymbolPoly<Kind>& p, const RenderOptions& options) {
  NPoly den(Rational(1));
  if (options.common_denominator) {
    const unsigned w = p.max_weight();
    if (w > 0) den = falling_factorial_poly(w);
  }
  for (const auto& [m, c] : p.terms()) {
    if (!c.den().is_constant()) den = lcm(den, c.den());
  }
  FractionView view;
  BigInt scalar = 1;
  std::vector<NPoly> numerators;
  for (const auto& [m, c] : p.terms()) {
    NPoly num = c.num() * divmod(den, c.den()).first;
    for (const auto& q : num.coefficients()) mpz_lcm(scalar.get_mpz_t(), scalar.get_mpz_t(), q.get_den_mpz_t());
    numerators.push_back(std::move(num));
  }
  std::size_t i = 0;
  for (const auto& [m, c] : p.terms()) {
    NPoly num = numerators[i++] * Rational(scalar);
    TermView t;
    t.negative = num.leading() < 0;
    t.coefficient = t.negative ? -num : num;
    t.monomial = &m;
    view.terms.push_back(std::move(t));
  }
  // Display order: highest power of n first. Ties follow the customary
  // forms: s, e and h polynomials lead with s1^i (descending monomial order),
  // moment and cumulant polynomials lead with the single-index term.
  if constexpr (Kind != SymbolKind::Moment && Kind != SymbolKind::Cumulant) {
    std::reverse(view.terms.begin(), view.terms.end());
  }
  std::stable_sort(view.terms.begin(), view.terms.end(), [](const TermView& a, const TermView& b) {
    return a.coefficient.degree() > b.coefficient.degree();
  });
  view.den = factor_denominator(den, scalar);
  return view;
}

std::string linear_factor(long root, bool latex) {
  if (root == 0) return "n";
  const std::string op = latex ? (root > 0 ? " - " : " + ") : (root > 0 ? "-" : "+");
  return "(n" + op + std::to_string(root > 0 ? root : -root) + ")";
}

std::string power_suffix(unsigned e, bool latex) {
  if (e == 1) return "";
  return latex ? "^{" + std::to_string(e) + "}" : "^" + std::to_string(e);
}

std::string latex_npoly(const NPoly& p) {
  std::string out;
  bool first = true;
  for (int k = p.degree(); k >= 0; --k) {
    const Rational& c = p.coefficients()[static_cast<std::size_t>(k)];
    if (c == 0) continue;
    const bool neg = c < 0;
    out += first ? (neg ? "-" : "") : (neg ? " - " : " + ");
    first = false;
    const Rational mag = abs(c);
    if (k == 0 || mag != 1) out += mag.get_str();
    if (k > 0) out += k > 1 ? "n^{" + std::to_string(k) + "}" : "n";
  }
  return out;
}

template <SymbolKind Kind>
std::string format_symbol(const ExponentVector& w, unsigned vars, bool latex) {
  if (!latex) return symbol_name(Kind, vars, w);
  std::string out(1, symbol_letter(Kind));
  out += "_{";
  for (std::size_t i = 0; i < w.size(); ++i) {
    if (i) out += ',';
    out += std::to_string(w[i]);
  }
  return out + "}";
}

template <SymbolKind Kind>
std::string format_term_body(const TermView& t, unsigned vars, bool latex) {
  const std::string times = latex ? " " : "*";
  std::vector<std::string> pieces;
  const NPoly& c = t.coefficient;
  const bool unit_mono = t.monomial->is_unit();
  std::size_t nonzero = 0;
  for (const auto& q : c.coefficients()) nonzero += (q != 0);
  if (nonzero == 1) {
    const int k = c.degree();
    const Rational& lead = c.leading();
    if (lead != 1 || (k == 0 && unit_mono)) pieces.push_back(lead.get_str());
    if (k > 0) pieces.push_back(latex ? (k > 1 ? "n^{" + std::to_string(k) + "}" : "n") : c.monic().to_string());
  } else if (unit_mono) {
    pieces.push_back(latex ? latex_npoly(c) : c.to_string());
  } else {
    pieces.push_back("(" + (latex ? latex_npoly(c) : c.to_string(true)) + ")");
  }
  for (const auto& [w, e] : t.monomial->factors()) {
    pieces.push_back(format_symbol<Kind>(w, vars, latex) + power_suffix(e, latex));
  }
  std::string out;
  for (std::size_t i = 0; i < pieces.size(); ++i) {
    if (i) out += times;
    out += pieces[i];
  }
  return out;
}

std::vector<std::string> denominator_pieces(const DenominatorView& d, bool latex) {
  std::vector<std::string> pieces;
  if (d.scalar != 1) pieces.push_back(d.scalar.get_str());
  for (auto [root, mult] : d.roots) pieces.push_back(linear_factor(root, latex) + power_suffix(mult, latex));
  if (!d.residual.is_constant()) {
    pieces.push_back("(" + (latex ? latex_npoly(d.residual) : d.residual.to_string(true)) + ")");
  }
  return pieces;
}

template <SymbolKind Kind>
std::string render_fraction(const SymbolPoly<Kind>& p, const RenderOptions& options, bool latex) {
  if (p.is_zero()) return "0";
  const FractionView view = build_view(p, options);
  std::string num;
  for (std::size_t i = 0; i < view.terms.size(); ++i) {
    const TermView& t = view.terms[i];
    if (i == 0) {
      if (t.negative) num += '-';
    } else {
      num += t.negative ? " - " : " + ";
    }
    num += format_term_body<Kind>(t, p.vars(), latex);
  }
  if (view.den.is_one()) return num;
  const auto pieces = denominator_pieces(view.den, latex);
  if (latex) {
    std::string den;
    for (std::size_t i = 0; i < pieces.size(); ++i) den += (i ? " " : "") + pieces[i];
    return "\\frac{" + num + "}{" + den + "}";
  }
  std::string den;
  for (std::size_t i = 0; i < pieces.size(); ++i) den += (i ? "*" : "") + pieces[i];
  if (pieces.size() > 1) den = "(" + den + ")";
  const bool single = view.terms.size() == 1 && view.terms[0].coefficient.is_constant();
  return (single ? num : "(" + num + ")") + "/" + den;
}

nlohmann::json npoly_json(const NPoly& p) {
  nlohmann::json out = nlohmann::json::array();
  const auto c = p.coefficients();
  for (std::size_t k = 0; k < c.size(); ++k) {
    if (c[k] == 0) continue;
    out.push_back({k, c[k].get_num().get_str() + "/" + c[k].get_den().get_str()});
  }
  return out;
}

Rational parse_rational(const nlohmann::json& j) {
  if (!j.is_string()) throw parse_error("json-ast: rational must be a \"p/q\" string");
  const std::string s = j.get<std::string>();
  if (s.empty() || s.find_first_not_of("-0123456789/") != std::string::npos) {
    throw parse_error("json-ast: malformed rational \"" + s + "\"");
  }
  Rational q;
  if (q.set_str(s, 10) != 0 || q.get_den() == 0) throw parse_error("json-ast: malformed rational \"" + s + "\"");
  q.canonicalize();
  return q;
}

NPoly parse_npoly(const nlohmann::json& j) {
  if (!j.is_array()) throw parse_error("json-ast: polynomial must be an array of [degree, \"p/q\"]");
  std::vector<Rational> coeffs;
  for (const auto& entry : j) {
    if (!entry.is_array() || entry.size() != 2 || !entry[0].is_number_unsigned()) {
      throw parse_error("json-ast: polynomial entries must be [degree, \"p/q\"]");
    }
    const auto deg = entry[0].get<std::size_t>();
    if (deg > 4096) throw parse_error("json-ast: degree out of range");
    if (coeffs.size() <= deg) coeffs.resize(deg + 1, Rational(0));
    coeffs[deg] += parse_rational(entry[1]);
  }
  return NPoly(std::move(coeffs));
}

}  // namespace

template <SymbolKind Kind>
std::string render(const SymbolPoly<Kind>& p, RenderFormat format, const RenderOptions& options) {
  switch (format) {
    case RenderFormat::Human:
      return render_fraction(p, options, false);
    case RenderFormat::Latex:
      return render_fraction(p, options, true);
    case RenderFormat::Json:
      return to_json(p).dump();
  }
  return {};
}

template <SymbolKind Kind>
nlohmann::json to_json(const SymbolPoly<Kind>& p) {
  nlohmann::json out;
  out["vars"] = p.vars();
  if constexpr (Kind != SymbolKind::PowerSum) out["symbol"] = std::string(1, symbol_letter(Kind));
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [m, c] : p.terms()) {
    nlohmann::json mono = nlohmann::json::array();
    for (const auto& [w, e] : m.factors()) mono.push_back({w, e});
    terms.push_back({{"coef", {{"num", npoly_json(c.num())}, {"den", npoly_json(c.den())}}}, {"mono", mono}});
  }
  out["terms"] = std::move(terms);
  return out;
}

template <SymbolKind Kind>
SymbolPoly<Kind> from_json(const nlohmann::json& ast) {
  try {
    if (!ast.is_object() || !ast.contains("vars") || !ast.contains("terms")) {
      throw parse_error("json-ast: expected an object with \"vars\" and \"terms\"");
    }
    const std::string expected(1, symbol_letter(Kind));
    const std::string symbol = ast.contains("symbol") ? ast.at("symbol").get<std::string>() : "s";
    if (symbol != expected) throw parse_error("json-ast: symbol \"" + symbol + "\" where \"" + expected + "\" expected");
    if (!ast.at("vars").is_number_unsigned() || ast.at("vars").get<unsigned>() == 0) {
      throw parse_error("json-ast: \"vars\" must be a positive integer");
    }
    const auto vars = ast.at("vars").get<unsigned>();
    SymbolPoly<Kind> p(vars);
    for (const auto& term : ast.at("terms")) {
      const auto& coef = term.at("coef");
      NPoly num = parse_npoly(coef.at("num"));
      NPoly den = parse_npoly(coef.at("den"));
      if (den.is_zero()) throw parse_error("json-ast: zero denominator");
      std::vector<Monomial::Factor> factors;
      for (const auto& f : term.at("mono")) {
        if (!f.is_array() || f.size() != 2) throw parse_error("json-ast: monomial factors must be [[e...], power]");
        factors.emplace_back(f[0].get<ExponentVector>(), f[1].get<unsigned>());
      }
      p.add_term(Monomial(std::move(factors)), NRational(std::move(num), std::move(den)));
    }
    return p;
  } catch (const nlohmann::json::exception& e) {
    throw parse_error(std::string("json-ast: ") + e.what());
  } catch (const invalid_argument& e) {
    throw parse_error(std::string("json-ast: ") + e.what());
  }
}

PowerSumPoly parse_power_sum_json(std::string_view text) {
  nlohmann::json ast;
  try {
    ast = nlohmann::json::parse(text);
  } catch (const nlohmann::json::parse_error& e) {
    throw parse_error(std::string("json-ast: ") + e.what());
  }
  return from_json<SymbolKind::PowerSum>(ast);
}

#define KSTAT_INSTANTIATE_RENDER(K)                                                               \
  template std::string render<K>(const SymbolPoly<K>&, RenderFormat, const RenderOptions&); \
  template nlohmann::json to_json<K>(const SymbolPoly<K>&);                                      \
  template SymbolPoly<K> from_json<K>(const nlohmann::json&);

KSTAT_INSTANTIATE_RENDER(SymbolKind::PowerSum)
KSTAT_INSTANTIATE_RENDER(SymbolKind::Moment)
KSTAT_INSTANTIATE_RENDER(SymbolKind::Cumulant)
KSTAT_INSTANTIATE_RENDER(SymbolKind::Elementary)
KSTAT_INSTANTIATE_RENDER(SymbolKind::Homogeneous)

#undef KSTAT_INSTANTIATE_RENDER

}  // namespace kstat
