#pragma once

#include <memory>
#include <string>
#include <vector>

#include "ncfa/algebra.hpp"

namespace ncfa {

enum class ModelKind { cyclic, abelian, nonabelian, tl };

/// A finite group given by its multiplication table together with a complete
/// set of unitary irreducible representations. Element 0 is the identity and
/// table[a][b] is the product with a acting on the left.
struct IrrepTable {
    int order = 0;
    std::vector<std::string> labels;
    std::vector<std::vector<int>> table;
    /// irreps[r][g]: the d_r x d_r unitary representing element g.
    std::vector<std::vector<Matrix>> irreps;

    int irrep_dim(std::size_t r) const {
        return static_cast<int>(irreps[r][0].rows());
    }
    int inverse(int g) const;
    /// Throws InvalidIrrepTable naming the first failing invariant:
    /// dimension count, homomorphism property, unitarity, orthogonality.
    void validate() const;
};

/// The symmetric group on three letters with its trivial, sign and standard
/// two-dimensional orthogonal irreps.
IrrepTable s3();

/// A pair of 2-box algebras with the string Fourier transform between them,
/// the Jones projection and the convolution. The transform is stored as a
/// pair of mutually inverse coordinate matrices built from the model
/// formulas; the normalization is pinned by three anchors: Plancherel,
/// ||F(x)||_inf <= ||x||_1 / delta, and F(e1) = identity / delta.
class PlanarModel {
public:
    enum class Side { plus, minus };

    const AlgebraPtr& plus() const { return plus_; }
    const AlgebraPtr& minus() const { return minus_; }
    const AlgebraPtr& algebra(Side s) const { return s == Side::plus ? plus_ : minus_; }
    double delta() const { return delta_; }
    ModelKind kind() const { return kind_; }
    const std::string& id() const { return id_; }
    const Element& jones_projection() const { return *e1_; }

    Side side_of(const Element& x) const;
    static Side opposite(Side s) { return s == Side::plus ? Side::minus : Side::plus; }

    /// Coordinate matrix of the SFT P2+ -> P2- and of its inverse.
    const Matrix& forward_matrix() const { return fwd_; }
    const Matrix& backward_matrix() const { return bwd_; }

    // group structure (cyclic / abelian / nonabelian models)
    bool is_group_model() const { return kind_ != ModelKind::tl; }
    int group_order() const { return order_; }
    int group_mul(int a, int b) const { return mul_[a][b]; }
    int group_inv(int g) const { return inv_[g]; }
    const std::vector<int>& abelian_factors() const { return factors_; }
    const IrrepTable& irrep_table() const { return table_; }

    /// Whether a TL delta is a genuine index value (2cos(pi/m) or >= 2).
    bool tl_index_delta() const { return tl_index_delta_; }

    /// Value of the abelian character indexed j at group element k.
    Complex character_value(int j, int k) const;

private:
    friend std::shared_ptr<const PlanarModel> cyclic_model(int n);
    friend std::shared_ptr<const PlanarModel> abelian_model(std::vector<int> factors);
    friend std::shared_ptr<const PlanarModel> nonabelian_model(IrrepTable table);
    friend std::shared_ptr<const PlanarModel> tl_model(double delta);
    PlanarModel() = default;

    void finalize(); // builds transform matrices and e1, checks anchors

    ModelKind kind_ = ModelKind::cyclic;
    std::string id_;
    double delta_ = 0.0;
    AlgebraPtr plus_, minus_;
    std::shared_ptr<Element> e1_;
    Matrix fwd_, bwd_;

    int order_ = 0;
    std::vector<std::vector<int>> mul_;
    std::vector<int> inv_;
    std::vector<int> factors_;
    IrrepTable table_;
    bool tl_index_delta_ = false;
};

using ModelPtr = std::shared_ptr<const PlanarModel>;

/// Functions on Z_n with the unitary DFT as SFT; delta = sqrt(n).
ModelPtr cyclic_model(int n);
/// Product group Z_{n1} x ... x Z_{nk} with the tensor-product DFT.
ModelPtr abelian_model(std::vector<int> factors);
/// Group algebra of a finite group from its irrep table; the dual side has
/// one block of dimension d_pi and weight d_pi per irrep.
ModelPtr nonabelian_model(IrrepTable table);
/// Temperley-Lieb 2-box model: two one-dimensional blocks with weights
/// (1, delta^2 - 1); requires delta >= sqrt(2).
ModelPtr tl_model(double delta);

enum class ShiftSide { left, right };

/// Indicator of a subgroup (checked closed under product and inverse).
Element subgroup_biprojection(const PlanarModel& m, const std::vector<int>& subgroup);
/// Indicator of the coset gH (left) or Hg (right).
Element coset_shift(const PlanarModel& m, const std::vector<int>& subgroup, int g,
                    ShiftSide side);
/// chi(k) * 1_{H+g}(k) on an abelian model; Donoho-Stark extremizer.
Element bishift_element(const PlanarModel& m, const std::vector<int>& subgroup, int g,
                        int character);
/// Quadratic phase u(k) = exp(2 pi i (lambda k^2 + mu k)/n) (odd n; the
/// lambda/2 variant for even n); gcd(lambda, n) = 1 required.
Element biunitary_quadratic(const PlanarModel& m, long lambda, long mu);
/// The two TL biunitaries 1 - e1 + (1 - delta^2/2 +- i delta sqrt(4-delta^2)/2) e1.
Element tl_biunitary(const PlanarModel& m, int sign);

/// Point mass at g: the trace-one projection delta_g.
Element group_delta(const PlanarModel& m, int g);
/// Abelian character function chi_j as an element of the plus algebra.
Element group_character(const PlanarModel& m, int j);
/// Matrix-element function g -> pi_r(g)(i,j) on a group model.
Element irrep_matrix_element(const PlanarModel& m, int r, int i, int j);

/// All subgroups generated by at most two elements, sorted and deduplicated.
/// Complete for cyclic groups, products of two cyclic factors, and S3.
std::vector<std::vector<int>> enumerate_subgroups(const PlanarModel& m);

} // namespace ncfa
