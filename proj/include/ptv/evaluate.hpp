#pragma once

#include "ptv/diagram.hpp"
#include "ptv/process.hpp"

namespace ptv {

struct EvalOptions {
  /// Largest total dimension (Σ of block sizes) allowed on any wire bundle
  /// produced during evaluation.
  int max_dim = 64;
};

/// Interpret a well-typed term as a process. Typechecks first; throws
/// TypeError on ill-typed input and DimensionError when a sub-term exceeds
/// the dimension cap.
Process evaluate(const Term& t, const GeneratorEnv& env, const EvalOptions& opts = {});

}  // namespace ptv
