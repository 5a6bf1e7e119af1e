#include "ncfa/models.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <cmath>
#include <numeric>
#include <set>

namespace ncfa {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

std::vector<int> decode_mixed_radix(int g, const std::vector<int>& factors) {
    std::vector<int> digits(factors.size());
    for (std::size_t i = factors.size(); i-- > 0;) {
        digits[i] = g % factors[i];
        g /= factors[i];
    }
    return digits;
}

int encode_mixed_radix(const std::vector<int>& digits, const std::vector<int>& factors) {
    int g = 0;
    for (std::size_t i = 0; i < factors.size(); ++i) g = g * factors[i] + digits[i];
    return g;
}

AlgebraPtr scalar_algebra(int n, const std::string& id) {
    std::vector<BlockSpec> blocks(static_cast<std::size_t>(n), BlockSpec{1, 1.0});
    return MarkovAlgebra::make(std::move(blocks), std::sqrt(static_cast<double>(n)), id);
}

} // namespace

// -- IrrepTable ---------------------------------------------------------------

int IrrepTable::inverse(int g) const {
    for (int h = 0; h < order; ++h)
        if (table[g][h] == 0) return h;
    fail(Errc::InvalidIrrepTable, "element " + std::to_string(g) + " has no inverse");
}

void IrrepTable::validate() const {
    if (order < 1 || static_cast<int>(table.size()) != order)
        fail(Errc::InvalidIrrepTable, "multiplication table size mismatch");
    for (const auto& row : table) {
        if (static_cast<int>(row.size()) != order)
            fail(Errc::InvalidIrrepTable, "multiplication table row size mismatch");
        for (int v : row)
            if (v < 0 || v >= order) fail(Errc::InvalidIrrepTable, "table entry out of range");
    }
    for (int g = 0; g < order; ++g)
        if (table[0][g] != g || table[g][0] != g)
            fail(Errc::InvalidIrrepTable, "element 0 is not the identity");

    long dim_sq = 0;
    for (std::size_t r = 0; r < irreps.size(); ++r) {
        if (static_cast<int>(irreps[r].size()) != order)
            fail(Errc::InvalidIrrepTable, "irrep " + std::to_string(r) + " misses group elements");
        const int d = irrep_dim(r);
        dim_sq += static_cast<long>(d) * d;
        for (int g = 0; g < order; ++g) {
            const Matrix& m = irreps[r][g];
            if (m.rows() != d || m.cols() != d)
                fail(Errc::InvalidIrrepTable, "irrep " + std::to_string(r) + " has ragged shapes");
            if ((m.adjoint() * m - Matrix::Identity(d, d)).cwiseAbs().maxCoeff() > 1e-10)
                fail(Errc::InvalidIrrepTable,
                     "irrep " + std::to_string(r) + " is not unitary at element " + std::to_string(g));
        }
        for (int g = 0; g < order; ++g)
            for (int h = 0; h < order; ++h)
                if ((irreps[r][g] * irreps[r][h] - irreps[r][table[g][h]]).cwiseAbs().maxCoeff() >
                    1e-10)
                    fail(Errc::InvalidIrrepTable,
                         "irrep " + std::to_string(r) + " fails the homomorphism property");
    }
    if (dim_sq != order)
        fail(Errc::InvalidIrrepTable, "sum of squared irrep dimensions is not the group order");

    // column orthogonality: sum_r d_r chi_r(g) = order * [g == identity]
    for (int g = 0; g < order; ++g) {
        Complex s = 0.0;
        for (std::size_t r = 0; r < irreps.size(); ++r)
            s += static_cast<double>(irrep_dim(r)) * irreps[r][g].trace();
        const Complex expect = g == 0 ? Complex(order, 0.0) : Complex(0.0, 0.0);
        if (std::abs(s - expect) > 1e-8)
            fail(Errc::InvalidIrrepTable, "character orthogonality fails at element " +
                                              std::to_string(g));
    }
}

IrrepTable s3() {
    // permutations as images [s(0), s(1), s(2)]; composition (a.b)(x) = a(b(x))
    const std::vector<std::array<int, 3>> perms = {
        {0, 1, 2}, {1, 2, 0}, {2, 0, 1}, {1, 0, 2}, {0, 2, 1}, {2, 1, 0}};
    IrrepTable t;
    t.order = 6;
    t.labels = {"e", "r", "r2", "s", "sr", "sr2"};
    t.table.assign(6, std::vector<int>(6, -1));
    auto compose = [&](int a, int b) {
        std::array<int, 3> c{};
        for (int x = 0; x < 3; ++x) c[x] = perms[a][perms[b][x]];
        for (int i = 0; i < 6; ++i)
            if (perms[i] == c) return i;
        return -1;
    };
    for (int a = 0; a < 6; ++a)
        for (int b = 0; b < 6; ++b) t.table[a][b] = compose(a, b);

    auto parity = [&](int a) {
        int inversions = 0;
        for (int i = 0; i < 3; ++i)
            for (int j = i + 1; j < 3; ++j)
                if (perms[a][i] > perms[a][j]) ++inversions;
        return inversions % 2 == 0 ? 1.0 : -1.0;
    };

    // standard 2-dim irrep: permutation matrices restricted to the plane
    // orthogonal to (1,1,1)
    Eigen::Matrix<double, 3, 2> basis;
    basis << 1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
        -1.0 / std::sqrt(2.0), 1.0 / std::sqrt(6.0),
        0.0, -2.0 / std::sqrt(6.0);

    t.irreps.resize(3);
    for (int g = 0; g < 6; ++g) {
        Matrix triv(1, 1), sgn(1, 1);
        triv(0, 0) = 1.0;
        sgn(0, 0) = parity(g);
        t.irreps[0].push_back(triv);
        t.irreps[1].push_back(sgn);
        Eigen::Matrix3d p = Eigen::Matrix3d::Zero();
        for (int j = 0; j < 3; ++j) p(perms[g][j], j) = 1.0;
        Eigen::Matrix2d std2 = basis.transpose() * p * basis;
        t.irreps[2].push_back(std2.cast<Complex>());
    }
    return t;
}

// -- PlanarModel ----------------------------------------------------------------

PlanarModel::Side PlanarModel::side_of(const Element& x) const {
    if (x.algebra() == plus_) return Side::plus;
    if (x.algebra() == minus_) return Side::minus;
    fail(Errc::AlgebraMismatch, "element does not belong to this model");
}

Complex PlanarModel::character_value(int j, int k) const {
    const std::vector<int> jd = decode_mixed_radix(j, factors_);
    const std::vector<int> kd = decode_mixed_radix(k, factors_);
    double frac = 0.0;
    for (std::size_t i = 0; i < factors_.size(); ++i)
        frac += static_cast<double>((static_cast<long>(jd[i]) * kd[i]) % factors_[i]) / factors_[i];
    return std::polar(1.0, kTwoPi * frac);
}

namespace {

// forward/backward formulas by model kind, applied to coordinate vectors
Element apply_group_forward(const PlanarModel& m, const Element& x) {
    const int n = m.group_order();
    if (m.kind() == ModelKind::nonabelian) {
        const IrrepTable& t = m.irrep_table();
        std::vector<Matrix> out;
        out.reserve(t.irreps.size());
        for (std::size_t r = 0; r < t.irreps.size(); ++r) {
            Matrix acc = Matrix::Zero(t.irrep_dim(r), t.irrep_dim(r));
            for (int g = 0; g < n; ++g) acc += x.block(g)(0, 0) * t.irreps[r][g];
            out.push_back(acc / m.delta());
        }
        return Element(m.minus(), std::move(out));
    }
    std::vector<Matrix> out(static_cast<std::size_t>(n), Matrix(1, 1));
    for (int j = 0; j < n; ++j) {
        Complex acc = 0.0;
        for (int k = 0; k < n; ++k) acc += x.block(k)(0, 0) * m.character_value(j, k);
        out[j](0, 0) = acc / m.delta();
    }
    return Element(m.minus(), std::move(out));
}

Element apply_group_backward(const PlanarModel& m, const Element& a) {
    const int n = m.group_order();
    std::vector<Matrix> out(static_cast<std::size_t>(n), Matrix(1, 1));
    if (m.kind() == ModelKind::nonabelian) {
        const IrrepTable& t = m.irrep_table();
        for (int g = 0; g < n; ++g) {
            Complex acc = 0.0;
            for (std::size_t r = 0; r < t.irreps.size(); ++r)
                acc += static_cast<double>(t.irrep_dim(r)) *
                       (t.irreps[r][m.group_inv(g)] * a.block(r)).trace();
            out[g](0, 0) = acc / m.delta();
        }
        return Element(m.plus(), std::move(out));
    }
    for (int k = 0; k < n; ++k) {
        Complex acc = 0.0;
        for (int j = 0; j < n; ++j) acc += a.block(j)(0, 0) * std::conj(m.character_value(j, k));
        out[k](0, 0) = acc / m.delta();
    }
    return Element(m.plus(), std::move(out));
}

// TL in block coordinates (x0 on the e1 block, x1 on the complement):
// with x = a 1 + b e1 one has a = x1, b = x0 - x1 and
// F(x) = (b/delta) 1 + (a delta) e1.
Element apply_tl_forward(const PlanarModel& m, const Element& x) {
    const Complex a = x.block(1)(0, 0);
    const Complex b = x.block(0)(0, 0) - a;
    std::vector<Matrix> out(2, Matrix(1, 1));
    out[0](0, 0) = b / m.delta() + a * m.delta();
    out[1](0, 0) = b / m.delta();
    return Element(m.minus(), std::move(out));
}

Element apply_tl_backward(const PlanarModel& m, const Element& y) {
    const Complex b = m.delta() * y.block(1)(0, 0);
    const Complex a = (y.block(0)(0, 0) - y.block(1)(0, 0)) / m.delta();
    std::vector<Matrix> out(2, Matrix(1, 1));
    out[0](0, 0) = a + b;
    out[1](0, 0) = a;
    return Element(m.plus(), std::move(out));
}

} // namespace

void PlanarModel::finalize() {
    const std::size_t dp = plus_->coord_count();
    const std::size_t dm = minus_->coord_count();
    fwd_.resize(static_cast<Eigen::Index>(dm), static_cast<Eigen::Index>(dp));
    bwd_.resize(static_cast<Eigen::Index>(dp), static_cast<Eigen::Index>(dm));
    for (std::size_t j = 0; j < dp; ++j) {
        CVector e = CVector::Zero(static_cast<Eigen::Index>(dp));
        e(static_cast<Eigen::Index>(j)) = 1.0;
        const Element basis = from_coords(plus_, e);
        const Element image = kind_ == ModelKind::tl ? apply_tl_forward(*this, basis)
                                                     : apply_group_forward(*this, basis);
        fwd_.col(static_cast<Eigen::Index>(j)) = to_coords(image);
    }
    for (std::size_t j = 0; j < dm; ++j) {
        CVector e = CVector::Zero(static_cast<Eigen::Index>(dm));
        e(static_cast<Eigen::Index>(j)) = 1.0;
        const Element basis = from_coords(minus_, e);
        const Element image = kind_ == ModelKind::tl ? apply_tl_backward(*this, basis)
                                                     : apply_group_backward(*this, basis);
        bwd_.col(static_cast<Eigen::Index>(j)) = to_coords(image);
    }

    if (kind_ == ModelKind::tl) {
        std::vector<Matrix> d(2, Matrix(1, 1));
        d[0](0, 0) = 1.0;
        d[1](0, 0) = 0.0;
        e1_ = std::make_shared<Element>(plus_, std::move(d));
    } else {
        std::vector<Matrix> d(static_cast<std::size_t>(order_), Matrix::Zero(1, 1));
        d[0](0, 0) = 1.0;
        e1_ = std::make_shared<Element>(plus_, std::move(d));
    }
}

ModelPtr cyclic_model(int n) {
    if (n < 2) fail(Errc::BadOrder, "cyclic model needs order >= 2");
    return abelian_model({n});
}

ModelPtr abelian_model(std::vector<int> factors) {
    if (factors.empty()) fail(Errc::BadOrder, "abelian model needs at least one factor");
    long n = 1;
    for (int f : factors) {
        if (f < 2) fail(Errc::BadOrder, "abelian factors must be >= 2");
        n *= f;
        if (n > 4096) fail(Errc::BadOrder, "group order too large");
    }
    auto m = std::shared_ptr<PlanarModel>(new PlanarModel());
    m->kind_ = factors.size() == 1 ? ModelKind::cyclic : ModelKind::abelian;
    std::string id = m->kind_ == ModelKind::cyclic ? "cyclic:" + std::to_string(factors[0])
                                                   : "abelian:";
    if (m->kind_ == ModelKind::abelian)
        for (std::size_t i = 0; i < factors.size(); ++i)
            id += (i ? "x" : "") + std::to_string(factors[i]);
    m->id_ = id;
    m->order_ = static_cast<int>(n);
    m->factors_ = factors;
    m->delta_ = std::sqrt(static_cast<double>(n));
    m->plus_ = scalar_algebra(m->order_, id + "/plus");
    m->minus_ = scalar_algebra(m->order_, id + "/minus");
    m->mul_.assign(m->order_, std::vector<int>(m->order_, 0));
    m->inv_.assign(m->order_, 0);
    for (int a = 0; a < m->order_; ++a) {
        const auto da = decode_mixed_radix(a, factors);
        for (int b = 0; b < m->order_; ++b) {
            auto db = decode_mixed_radix(b, factors);
            for (std::size_t i = 0; i < factors.size(); ++i) db[i] = (da[i] + db[i]) % factors[i];
            m->mul_[a][b] = encode_mixed_radix(db, factors);
        }
        auto di = da;
        for (std::size_t i = 0; i < factors.size(); ++i) di[i] = (factors[i] - da[i]) % factors[i];
        m->inv_[a] = encode_mixed_radix(di, factors);
    }
    m->finalize();
    return m;
}

ModelPtr nonabelian_model(IrrepTable table) {
    table.validate();
    auto m = std::shared_ptr<PlanarModel>(new PlanarModel());
    m->kind_ = ModelKind::nonabelian;
    m->id_ = table.order == 6 ? "s3" : "group:" + std::to_string(table.order);
    m->order_ = table.order;
    m->delta_ = std::sqrt(static_cast<double>(table.order));
    m->mul_ = table.table;
    m->inv_.resize(table.order);
    for (int g = 0; g < table.order; ++g) m->inv_[g] = table.inverse(g);
    m->plus_ = scalar_algebra(table.order, m->id_ + "/plus");
    std::vector<BlockSpec> dual;
    dual.reserve(table.irreps.size());
    for (std::size_t r = 0; r < table.irreps.size(); ++r)
        dual.push_back(BlockSpec{table.irrep_dim(r), static_cast<double>(table.irrep_dim(r))});
    m->minus_ = MarkovAlgebra::make(std::move(dual), m->delta_, m->id_ + "/minus");
    m->table_ = std::move(table);
    m->finalize();
    return m;
}

ModelPtr tl_model(double delta) {
    if (!(delta >= std::sqrt(2.0) - 1e-12))
        fail(Errc::DeltaTooSmall, "TL model needs delta >= sqrt(2)");
    auto m = std::shared_ptr<PlanarModel>(new PlanarModel());
    m->kind_ = ModelKind::tl;
    char delta_str[64];
    std::snprintf(delta_str, sizeof(delta_str), "%.17g", delta);
    m->id_ = std::string("tl:") + delta_str;
    m->delta_ = delta;
    std::vector<BlockSpec> blocks = {BlockSpec{1, 1.0}, BlockSpec{1, delta * delta - 1.0}};
    m->plus_ = MarkovAlgebra::make(blocks, delta, m->id_ + "/plus");
    m->minus_ = MarkovAlgebra::make(blocks, delta, m->id_ + "/minus");
    constexpr double pi = 3.14159265358979323846;
    m->tl_index_delta_ = delta >= 2.0 - 1e-9;
    for (int k = 3; !m->tl_index_delta_ && k <= 1000; ++k)
        if (std::abs(delta - 2.0 * std::cos(pi / k)) <= 1e-9) m->tl_index_delta_ = true;
    m->finalize();
    return m;
}

// -- element constructors ---------------------------------------------------------

namespace {

void require_group(const PlanarModel& m, const char* what) {
    if (!m.is_group_model()) fail(Errc::WrongModelKind, std::string(what) + " needs a group model");
}

void check_subgroup(const PlanarModel& m, const std::vector<int>& h) {
    if (h.empty()) fail(Errc::NotASubgroup, "empty subset");
    std::set<int> hs(h.begin(), h.end());
    for (int a : hs) {
        if (a < 0 || a >= m.group_order()) fail(Errc::NotASubgroup, "element index out of range");
        if (!hs.count(m.group_inv(a))) fail(Errc::NotASubgroup, "subset not closed under inverse");
        for (int b : hs)
            if (!hs.count(m.group_mul(a, b))) fail(Errc::NotASubgroup, "subset not closed under product");
    }
}

Element indicator(const PlanarModel& m, const std::set<int>& subset) {
    std::vector<Matrix> d(static_cast<std::size_t>(m.group_order()), Matrix::Zero(1, 1));
    for (int g : subset) d[static_cast<std::size_t>(g)](0, 0) = 1.0;
    return Element(m.plus(), std::move(d));
}

} // namespace

Element subgroup_biprojection(const PlanarModel& m, const std::vector<int>& subgroup) {
    require_group(m, "subgroup_biprojection");
    check_subgroup(m, subgroup);
    return indicator(m, std::set<int>(subgroup.begin(), subgroup.end()));
}

Element coset_shift(const PlanarModel& m, const std::vector<int>& subgroup, int g,
                    ShiftSide side) {
    require_group(m, "coset_shift");
    check_subgroup(m, subgroup);
    std::set<int> coset;
    for (int h : subgroup)
        coset.insert(side == ShiftSide::left ? m.group_mul(g, h) : m.group_mul(h, g));
    return indicator(m, coset);
}

Element bishift_element(const PlanarModel& m, const std::vector<int>& subgroup, int g,
                        int character) {
    if (m.kind() != ModelKind::cyclic && m.kind() != ModelKind::abelian)
        fail(Errc::WrongModelKind, "bishift_element needs an abelian model");
    check_subgroup(m, subgroup);
    std::vector<Matrix> d(static_cast<std::size_t>(m.group_order()), Matrix::Zero(1, 1));
    for (int h : subgroup) {
        const int k = m.group_mul(g, h);
        d[static_cast<std::size_t>(k)](0, 0) = m.character_value(character, k);
    }
    return Element(m.plus(), std::move(d));
}

Element biunitary_quadratic(const PlanarModel& m, long lambda, long mu) {
    if (m.kind() != ModelKind::cyclic)
        fail(Errc::WrongModelKind, "quadratic biunitaries live on cyclic models");
    const long n = m.group_order();
    const long lam = ((lambda % n) + n) % n;
    if (std::gcd(lam, n) != 1) fail(Errc::LambdaNotCoprime, "lambda must be coprime to n");
    std::vector<Matrix> d(static_cast<std::size_t>(n), Matrix(1, 1));
    for (long k = 0; k < n; ++k) {
        double frac; // exponent as a fraction of a full turn, reduced exactly
        if (n % 2 == 1) {
            frac = static_cast<double>((lam * k * k + mu * k) % n) / static_cast<double>(n);
        } else {
            const long quad = (lam * k * k) % (2 * n);
            const long lin = ((mu * k) % n + n) % n;
            frac = 0.5 * static_cast<double>(quad) / static_cast<double>(n) +
                   static_cast<double>(lin) / static_cast<double>(n);
        }
        d[static_cast<std::size_t>(k)](0, 0) = std::polar(1.0, kTwoPi * frac);
    }
    return Element(m.plus(), std::move(d));
}

Element tl_biunitary(const PlanarModel& m, int sign) {
    if (m.kind() != ModelKind::tl) fail(Errc::WrongModelKind, "tl_biunitary needs a TL model");
    const double delta = m.delta();
    if (delta > 2.0 + 1e-12)
        fail(Errc::DeltaOutOfRange, "TL biunitaries exist only for delta <= 2");
    const double root = std::sqrt(std::max(0.0, 4.0 - delta * delta));
    const Complex c(1.0 - delta * delta / 2.0, (sign >= 0 ? 1.0 : -1.0) * delta * root / 2.0);
    std::vector<Matrix> d(2, Matrix(1, 1));
    d[0](0, 0) = c;   // e1 block: 1 + (c - 1)
    d[1](0, 0) = 1.0; // complement block
    return Element(m.plus(), std::move(d));
}

Element group_delta(const PlanarModel& m, int g) {
    require_group(m, "group_delta");
    std::set<int> s{g};
    return indicator(m, s);
}

Element group_character(const PlanarModel& m, int j) {
    if (m.kind() != ModelKind::cyclic && m.kind() != ModelKind::abelian)
        fail(Errc::WrongModelKind, "characters index abelian models");
    std::vector<Matrix> d(static_cast<std::size_t>(m.group_order()), Matrix(1, 1));
    for (int k = 0; k < m.group_order(); ++k) d[static_cast<std::size_t>(k)](0, 0) = m.character_value(j, k);
    return Element(m.plus(), std::move(d));
}

Element irrep_matrix_element(const PlanarModel& m, int r, int i, int j) {
    if (m.kind() != ModelKind::nonabelian)
        fail(Errc::WrongModelKind, "irrep matrix elements need a nonabelian model");
    const IrrepTable& t = m.irrep_table();
    std::vector<Matrix> d(static_cast<std::size_t>(m.group_order()), Matrix(1, 1));
    for (int g = 0; g < m.group_order(); ++g) d[static_cast<std::size_t>(g)](0, 0) = t.irreps[r][g](i, j);
    return Element(m.plus(), std::move(d));
}

std::vector<std::vector<int>> enumerate_subgroups(const PlanarModel& m) {
    require_group(m, "enumerate_subgroups");
    const int n = m.group_order();
    auto closure = [&](std::set<int> gen) {
        gen.insert(0);
        bool grew = true;
        while (grew) {
            grew = false;
            std::vector<int> cur(gen.begin(), gen.end());
            for (int a : cur)
                for (int b : cur) {
                    if (gen.insert(m.group_mul(a, b)).second) grew = true;
                    if (gen.insert(m.group_inv(a)).second) grew = true;
                }
        }
        return std::vector<int>(gen.begin(), gen.end());
    };
    std::set<std::vector<int>> found;
    found.insert(closure({}));
    for (int a = 0; a < n; ++a) {
        found.insert(closure({a}));
        for (int b = a + 1; b < n; ++b) found.insert(closure({a, b}));
    }
    return std::vector<std::vector<int>>(found.begin(), found.end());
}

} // namespace ncfa
