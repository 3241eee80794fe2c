#ifndef SPROUTFORGE_COHOMOLOGY_HPP
#define SPROUTFORGE_COHOMOLOGY_HPP

#include <vector>

#include "sproutforge/brace_tree.hpp"
#include "sproutforge/sparse.hpp"

namespace sforge::engine {

// Exact cohomology data of Br(n) in one degree: cocycle and coboundary
// bases plus chosen harmonic representatives, with the projection pi_H and
// the splitting s realized against them.  Representatives are the first
// independent vectors in basis order, so everything is deterministic.
class CohomologyBlock {
public:
    int arity = 0;
    int degree = 0;
    std::vector<br::BrElement> cocycles;
    std::vector<br::BrElement> coboundaries;
    std::vector<br::BrElement> harmonic;

    int dim() const { return static_cast<int>(harmonic.size()); }

    // pi_H: coordinates of a cocycle on the harmonic representatives
    std::vector<Rational> project(const br::BrElement& cocycle) const;

    // the splitting s: harmonic combination with the given coordinates
    br::BrElement lift(const std::vector<Rational>& coords) const;

    // preimage under the differential: some x with dx = target, which must
    // lie in the image (the ker(Z -> H) splitting)
    br::BrElement d_preimage(const br::BrElement& target) const;
};

// Computed via two exact rank computations on the Br differential;
// cached per (arity, degree).  Arities above the bound raise a resource
// error carrying a size estimate.
const CohomologyBlock& cohomology(int arity, int degree, int arity_bound = 4);

} // namespace sforge::engine

#endif
