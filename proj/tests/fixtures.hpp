#pragma once

#include "taurec/bimodule.hpp"
#include "taurec/definition.hpp"
#include "taurec/embedded.hpp"

namespace fixtures {

inline const taurec::Definitions& ex51() {
  static const taurec::Definitions d = taurec::parse_definitions(taurec::embedded::ex51_definition);
  return d;
}

inline const taurec::FdAlgebra& a2() { return ex51().algebra("Lprime").algebra; }
inline const taurec::FdAlgebra& b3() { return ex51().algebra("Ldprime").algebra; }

inline const taurec::FdAlgebra& lambda() {
  static const taurec::FdAlgebra l = taurec::triangular_algebra(taurec::bimodule_from_morphism(ex51().morphisms.at("phi"))).algebra;
  return l;
}

}  // namespace fixtures
