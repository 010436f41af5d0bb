#pragma once

#include <map>
#include <utility>

#include "qderham/lattice.hpp"
#include "qderham/qpoly.hpp"

namespace qdr {

// One basis element of the complex: coefficient monomial and dx-subset mask.
struct FormBasisElem {
  unsigned mask;
  Exp exps;
  bool operator<(const FormBasisElem& o) const {
    return mask != o.mask ? mask < o.mask : exps < o.exps;
  }
  bool operator==(const FormBasisElem& o) const {
    return mask == o.mask && exps == o.exps;
  }
};

// Invariant factors per (cohomological degree, weight): torsion factors in
// divisibility order followed by one 0 per free summand; trivial groups get
// an empty list.
struct GradedModule {
  std::map<std::pair<unsigned, unsigned>, std::vector<mpz_class>> piece;
};

// The coordinate q-de Rham complex of Z[x_1..x_n] at truncation, decomposed
// by weight, with its q-Hodge filtration.  Scalars live in a (q-1)^N context;
// everything is flattened to integer lattices on the basis
// (form basis element) x (power of q-1).
class FilteredComplex {
 public:
  FilteredComplex(TruncContext ctx, unsigned nvars, unsigned degree_bound,
                  unsigned fil_depth);

  const TruncContext& context() const { return ctx_; }
  unsigned nvars() const { return nvars_; }
  unsigned degree_bound() const { return degree_bound_; }
  unsigned fil_depth() const { return fil_depth_; }
  unsigned max_weight() const { return degree_bound_ + nvars_; }

  // Basis of the degree-j, weight-w piece, in canonical order.
  const std::vector<FormBasisElem>& basis(unsigned j, unsigned w) const;

  // Flattened integer differential d: (j,w) -> (j+1,w); rows indexed by the
  // target flat basis, columns by the source.
  const ZMat& differential(unsigned j, unsigned w) const;

  // Flat coordinate indices belonging to filtration level i at (j,w): the
  // (q-1)-power of a coordinate must be at least max(i-j, 0).
  std::vector<size_t> fil_coords(unsigned i, unsigned j, unsigned w) const;

  // Rows of the filtration sublattice (unit vectors on fil_coords).
  ZMat fil_lattice(unsigned i, unsigned j, unsigned w) const;

  size_t flat_dim(unsigned j, unsigned w) const;

  // The same complex at (q-1)-precision 1: q = 1, classical de Rham with the
  // Hodge filtration shape.
  FilteredComplex reduce_mod_q1() const;

 private:
  void build();

  TruncContext ctx_;
  unsigned nvars_, degree_bound_, fil_depth_;
  // indexed [w][j]
  std::vector<std::vector<std::vector<FormBasisElem>>> basis_;
  std::vector<std::vector<ZMat>> diff_;
};

FilteredComplex build_qdr(unsigned nvars, const TruncContext& ctx,
                          unsigned degree_bound, unsigned fil_depth);

// Cohomology of filtration level i: per (degree j, weight w), the invariant
// factors of ker d / im d inside fil^i, computed on integer lattices.
GradedModule cohomology(const FilteredComplex& c, unsigned level);

// Multiplication matrix of a series on the free module underlying its
// context (columns = images of basis vectors).
ZMat scalar_mult_matrix(const QSeries& f);

}  // namespace qdr
