#pragma once
// Weight-class constants of a dyadic weight: Muckenhoupt and reverse Holder
// constants, their limiting/entropy forms, Orlicz-norm variants, and the
// weak (parent-normalized) counterparts. All suprema run over dyadic nodes.

#include "dyw/dyadic.hpp"

#include <functional>
#include <string>

namespace dyw {

enum class ConstantTag {
  ap,                        // sup_J <w>_J <w^{-1/(p-1)}>_J^{p-1}, p > 1
  ainf,                      // sup_J <w>_J exp(-<log w>_J)
  rhp,                       // sup_J <w^p>_J^{1/p} / <w>_J, p > 1
  rh1,                       // sup_J <(w/<w>_J) log(w/<w>_J)>_J
  rh1_via_maximal,           // sup_J <M(w; J)>_J / <w>_J
  rh1_via_luxemburg,         // sup_J ||w||_{L log L, J} / <w>_J
  weak_rhp,                  // sup_{J != root} <w^p>_J^{1/p} / <w>_{parent(J)}
  weak_rh1,                  // sup_{J != root} <w log(w/<w>_J)>_J / <w>_{parent(J)}
  weak_rh1_via_luxemburg,    // sup_{J != root} ||w||_{L log L, J} / <w>_{parent(J)}
};

struct ConstantKind {
  ConstantTag tag = ConstantTag::ainf;
  double p = 0.0;

  static ConstantKind ap(double p);
  static ConstantKind ainf() { return {ConstantTag::ainf, 0.0}; }
  static ConstantKind rhp(double p);
  static ConstantKind rh1() { return {ConstantTag::rh1, 0.0}; }
  static ConstantKind rh1_via_maximal() { return {ConstantTag::rh1_via_maximal, 0.0}; }
  static ConstantKind rh1_via_luxemburg() {
    return {ConstantTag::rh1_via_luxemburg, 0.0};
  }
  static ConstantKind weak_rhp(double p);
  static ConstantKind weak_rh1() { return {ConstantTag::weak_rh1, 0.0}; }
  static ConstantKind weak_rh1_via_luxemburg() {
    return {ConstantTag::weak_rh1_via_luxemburg, 0.0};
  }
};

// Canonical spelling used in reports: "Ap", "Ainf", "RHp", "RH1",
// "RH1ViaMaximal", "RH1ViaLuxemburg", "WeakRHp", "WeakRH1",
// "WeakRH1ViaLuxemburg".
std::string kind_name(const ConstantKind& kind);
// Inverse of kind_name; p is taken from the argument where the kind needs it.
ConstantKind parse_kind(const std::string& name, double p);

struct ConstantResult {
  double value = 0.0;
  NodeRef argmax;  // node attaining the supremum (first one in scan order)
};

// Computes the requested constant. Throws std::domain_error when an
// intermediate power average overflows to infinity.
ConstantResult weight_constant(const DyadicWeight& w, ConstantKind kind);

// Luxemburg norm with the averaged modular:
//   inf { lambda > 0 : <phi(w/lambda)>_J <= 1 }.
// phi must be nonnegative and nondecreasing with phi(0) = 0. Solved by
// geometric bracketing plus bisection to relative tolerance 1e-12.
double luxemburg_norm(const DyadicWeight& w, NodeRef node,
                      const std::function<double(double)>& phi);

// <w log w>_J - <w>_J log <w>_J, the unnormalized entropy gap at a node.
double entropy_gap(const DyadicWeight& w, NodeRef node);

// <w log(e + w/<w>_J)>_J, the integrand sandwiched by the maximal average
// (factors 1/3 and 2) and by the Luxemburg norm (factors 1 and 2).
double stein_average(const DyadicWeight& w, NodeRef node);

// (p/(p-1)) log( <w^p>_root^{1/p} / <w>_root ): tends to the root RH1
// integrand entropy_gap/<w> as p decreases to 1. Requires p > 1.
double rh1_limit_probe(const DyadicWeight& w, double p);

}  // namespace dyw
