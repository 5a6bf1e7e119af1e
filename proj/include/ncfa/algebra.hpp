#pragma once

#include <cmath>
#include <complex>
#include <cstdint>
#include <limits>
#include <memory>
#include <string>
#include <vector>

#include <Eigen/Dense>

#include "ncfa/errors.hpp"

namespace ncfa {

using Complex = std::complex<double>;
using Matrix  = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using CVector = Eigen::VectorXcd;

/// One matrix block of a finite-dimensional C*-algebra together with the
/// tracial weight of its minimal projections.
struct BlockSpec {
    int dim = 1;
    double weight = 1.0;
};

/// A finite direct sum of full matrix algebras carrying the unnormalized
/// Markov trace tr(x) = sum_k weight_k * Tr(x_k). Invariants:
///   weight_k >= 1 (irreducibility) and sum_k weight_k * dim_k = delta^2.
class MarkovAlgebra {
public:
    static std::shared_ptr<const MarkovAlgebra> make(std::vector<BlockSpec> blocks,
                                                     double delta,
                                                     std::string id = "algebra");

    const std::vector<BlockSpec>& blocks() const { return blocks_; }
    std::size_t block_count() const { return blocks_.size(); }
    int dim(std::size_t k) const { return blocks_[k].dim; }
    double weight(std::size_t k) const { return blocks_[k].weight; }
    double delta() const { return delta_; }
    const std::string& id() const { return id_; }

    /// Total complex dimension, sum of dim_k^2.
    std::size_t coord_count() const { return coords_; }

private:
    MarkovAlgebra(std::vector<BlockSpec> b, double d, std::string id);

    std::vector<BlockSpec> blocks_;
    double delta_;
    std::string id_;
    std::size_t coords_;
};

using AlgebraPtr = std::shared_ptr<const MarkovAlgebra>;

/// An element of a MarkovAlgebra: one complex matrix per block. Immutable
/// after construction; all entries are validated finite.
class Element {
public:
    Element(AlgebraPtr algebra, std::vector<Matrix> data);

    static Element zero(const AlgebraPtr& a);
    static Element identity(const AlgebraPtr& a);

    const AlgebraPtr& algebra() const { return algebra_; }
    const std::vector<Matrix>& data() const { return data_; }
    const Matrix& block(std::size_t k) const { return data_[k]; }
    std::size_t block_count() const { return data_.size(); }

private:
    AlgebraPtr algebra_;
    std::vector<Matrix> data_;
};

/// Eigendecomposition of a self-adjoint element, eigenvalues sorted
/// descending per block, eigenvector matrices unitary.
struct SpectralData {
    std::vector<RVector> values;
    std::vector<Matrix> vectors;
};

// -- arithmetic ---------------------------------------------------------

Element add(const Element& x, const Element& y);
Element sub(const Element& x, const Element& y);
Element scale(Complex c, const Element& x);
Element multiply(const Element& x, const Element& y);
Element adjoint(const Element& x);
/// |x| = (x* x)^{1/2}
Element abs_element(const Element& x);
/// |x|^2 = x* x
Element abs_squared(const Element& x);

inline Element operator+(const Element& x, const Element& y) { return add(x, y); }
inline Element operator-(const Element& x, const Element& y) { return sub(x, y); }
inline Element operator*(const Element& x, const Element& y) { return multiply(x, y); }
inline Element operator*(Complex c, const Element& x) { return scale(c, x); }
inline Element operator*(double c, const Element& x) { return scale(Complex(c, 0.0), x); }

// -- trace, norms, spectra ----------------------------------------------

Complex trace(const Element& x);

/// Singular values per block (descending) plus the global maximum.
/// 1x1 blocks are computed as |z| exactly, larger blocks by SVD.
struct SingularData {
    std::vector<RVector> sv;
    double sigma_max = 0.0;
};
SingularData singular_data(const Element& x);

constexpr double kPInfinity = std::numeric_limits<double>::infinity();

/// ||x||_p = (tr |x|^p)^{1/p} for finite p > 0 (a quasi-norm for p < 1),
/// largest singular value for p = infinity. The value itself overflows for
/// extreme orders (e.g. rank 5 at p = 1e-6 is ~5^{1e6}); entropy code goes
/// through log_pnorm instead.
double pnorm(const Element& x, double p);
/// Same, from precomputed singular values (bulk evaluation path).
double pnorm_from(const SingularData& s, const MarkovAlgebra& a, double p);
/// log ||x||_p evaluated in the log domain; stays finite for extreme orders
/// where the norm itself over- or underflows.
double log_pnorm(const Element& x, double p);
double log_pnorm_from(const SingularData& s, const MarkovAlgebra& a, double p);

SpectralData spectral(const Element& x);

/// Projection onto singular vectors with sigma > 1e-9 * sigma_max.
Element range_projection(const Element& x);
/// S(x) = tr R(x), the weighted rank.
double support(const Element& x);
double support_from(const SingularData& s, const MarkovAlgebra& a);

// -- entropies -----------------------------------------------------------

/// Renyi entropy h_p(x) = p/(1-p) log ||x||_p, p in (0,1) u (1,inf).
double renyi_entropy(const Element& x, double p);
/// H(x) = -tr(x log x) for positive x, with 0 log 0 = 0.
double von_neumann_entropy(const Element& x);

enum class EntropyLimit {
    max_entropy, ///< lim_{p->0} h_p = log S(x)
    vn_limit,    ///< -tr(|x| log|x|) / ||x||_1
    min_entropy, ///< lim_{p->inf} h_p = -log ||x||_inf
};
double entropy_limit(const Element& x, EntropyLimit which);

/// h_order with the limit substitutions: von Neumann within 1e-6 of order 1,
/// min-entropy at order infinity.
double renyi_or_limit(const Element& x, double order);

// -- sampling ------------------------------------------------------------

enum class RandomKind { generic, self_adjoint, unitary, projection, positive };

/// Deterministic in (algebra, kind, seed). generic draws i.i.d. standard
/// complex Gaussian entries; unitary orthonormalizes a generic sample;
/// projection truncates a self-adjoint sample at its median eigenvalue.
Element random_element(const AlgebraPtr& a, RandomKind kind, std::uint64_t seed);

// -- helpers -------------------------------------------------------------

/// max_k max_ij |x_k(i,j) - y_k(i,j)|
double max_abs_diff(const Element& x, const Element& y);
/// largest entry modulus
double max_abs(const Element& x);
bool is_zero(const Element& x);
bool same_algebra(const Element& x, const Element& y);

/// Relative comparison |a-b| <= tol * (1 + |a| + |b|).
inline bool rel_close(double a, double b, double tol = 1e-9) {
    return std::abs(a - b) <= tol * (1.0 + std::abs(a) + std::abs(b));
}

/// Flatten to a coordinate vector (blocks in order, row-major) and back.
CVector to_coords(const Element& x);
Element from_coords(const AlgebraPtr& a, const CVector& v);

/// 64-bit seed mixing (splitmix64 step); used to derive independent
/// per-sample and per-restart streams from one user seed.
std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt);

/// FNV-1a over block shapes and entry bit patterns.
std::uint64_t element_hash(const Element& x);

} // namespace ncfa
