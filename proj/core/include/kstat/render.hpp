#pragma once

#include "kstat/symbol_poly.hpp"

#include <nlohmann/json.hpp>

#include <string>
#include <string_view>

namespace kstat {

enum class RenderFormat { Human, Latex, Json };

struct RenderOptions {
  /// Render over (n)_W, W the largest monomial weight, instead of the least
  /// common denominator of the reduced coefficients.
  bool common_denominator = false;
};

/// Parses "human", "latex" or "json"; throws invalid_argument otherwise.
RenderFormat parse_render_format(std::string_view name);

/// Symbol name, e.g. "s3" for univariate and "s[2,1]" for multivariate.
std::string symbol_name(SymbolKind kind, unsigned vars, const ExponentVector& w);

template <SymbolKind Kind>
std::string render(const SymbolPoly<Kind>& p, RenderFormat format, const RenderOptions& options = {});

/// AST:
///   {"vars": v, "terms": [{"coef": {"num": [[deg, "p/q"], ...], "den": [...]},
///                          "mono": [[[e1, ..., ev], power], ...]}, ...]}
/// Non power-sum polynomials carry an extra "symbol": "m" | "k" | "e" | "h".
template <SymbolKind Kind>
nlohmann::json to_json(const SymbolPoly<Kind>& p);

/// Inverse of to_json; re-canonicalizes. Throws parse_error on schema violations.
template <SymbolKind Kind>
SymbolPoly<Kind> from_json(const nlohmann::json& ast);

/// Parses the text produced by render(..., RenderFormat::Json).
PowerSumPoly parse_power_sum_json(std::string_view text);

}  // namespace kstat
