#pragma once

#include <cstddef>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "combed/classify.hpp"
#include "combed/spectrum.hpp"

namespace combed {

using Params = std::map<std::string, double>;

/// A built-in generalized function.
struct CatalogEntry {
  std::string name;
  Params params;
  /// Pointwise rule; absent for distributions (delta and its derivatives).
  std::optional<EvaluatorFunction> evaluator;
  GeneratorPtr generator;
  Overall known = Overall::combed;
  /// Closed form of the filtered function for a given eps, returning NaN
  /// where the window is inadmissible. Empty when no closed form is known.
  std::function<EvaluatorFunction(double)> filtered;

  CoefficientSequence coefficients(std::size_t n) const;
};

/// Names accepted by make().
const std::vector<std::string>& catalog_names();

/// Parameters (with defaults):
///   constant        c=1
///   cosine          k=1 (integer >= 1)
///   delta           theta0=0
///   delta_derivative theta0=0, order=1 (integer 0..8)
///   step            theta0=0, left=0, right=1, at_jump=(left+right)/2
///   square_wave, triangle_wave, sawtooth  (none)
///   spiked          k=1, point=0, value=cos(k point)+1  (spiked cosine)
///   conjugate_delta theta0=0
/// Unknown names raise UnknownName; unknown keys or out-of-range values raise BadParams.
CatalogEntry make(std::string_view name, const Params& params = {});

/// `base` with its value replaced by `value` at the single point `point`.
/// The generator and filtered form are those of the base.
CatalogEntry make_spiked(const CatalogEntry& base, double point, double value);

/// Closed-form filtered evaluator; NotAvailable when the entry has none.
EvaluatorFunction exact_filtered(const CatalogEntry& entry, double eps);

/// Regenerates a generator from a serialized tag.
GeneratorPtr rehydrate_generator(std::string_view name, const Params& params);

}  // namespace combed
