#include "ncfa/algebra.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <random>

#include <Eigen/Eigenvalues>
#include <Eigen/QR>
#include <Eigen/SVD>

namespace ncfa {

namespace {

constexpr double kRankEps = 1e-9; // relative singular-value cutoff for R(x), S(x)

void check_same_algebra(const Element& x, const Element& y) {
    if (x.algebra() != y.algebra())
        fail(Errc::AlgebraMismatch, "elements belong to different algebras");
}

bool finite_matrix(const Matrix& m) {
    for (Eigen::Index j = 0; j < m.cols(); ++j)
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            if (!std::isfinite(m(i, j).real()) || !std::isfinite(m(i, j).imag())) return false;
    return true;
}

} // namespace

const char* errc_name(Errc c) {
    switch (c) {
        case Errc::EmptyBlocks: return "EmptyBlocks";
        case Errc::WeightBelowOne: return "WeightBelowOne";
        case Errc::TraceMismatch: return "TraceMismatch";
        case Errc::AlgebraMismatch: return "AlgebraMismatch";
        case Errc::NonPositiveP: return "NonPositiveP";
        case Errc::NotSelfAdjoint: return "NotSelfAdjoint";
        case Errc::NotPositive: return "NotPositive";
        case Errc::ZeroElement: return "ZeroElement";
        case Errc::PTooCloseToOne: return "PTooCloseToOne";
        case Errc::BadOrder: return "BadOrder";
        case Errc::InvalidIrrepTable: return "InvalidIrrepTable";
        case Errc::NotASubgroup: return "NotASubgroup";
        case Errc::WrongModelKind: return "WrongModelKind";
        case Errc::LambdaNotCoprime: return "LambdaNotCoprime";
        case Errc::DeltaTooSmall: return "DeltaTooSmall";
        case Errc::DeltaOutOfRange: return "DeltaOutOfRange";
        case Errc::POutOfRange: return "POutOfRange";
        case Errc::DegenerateOrder: return "DegenerateOrder";
        case Errc::NotNormalized: return "NotNormalized";
        case Errc::OutOfRegion: return "OutOfRegion";
        case Errc::NormTooLarge: return "NormTooLarge";
        case Errc::GridStraddlesOne: return "GridStraddlesOne";
        case Errc::NotABiprojection: return "NotABiprojection";
        case Errc::ConfigInvalid: return "ConfigInvalid";
        case Errc::ParseError: return "ParseError";
    }
    return "UnknownError";
}

// -- MarkovAlgebra --------------------------------------------------------

MarkovAlgebra::MarkovAlgebra(std::vector<BlockSpec> b, double d, std::string id)
    : blocks_(std::move(b)), delta_(d), id_(std::move(id)), coords_(0) {
    for (const auto& blk : blocks_) coords_ += static_cast<std::size_t>(blk.dim) * blk.dim;
}

AlgebraPtr MarkovAlgebra::make(std::vector<BlockSpec> blocks, double delta, std::string id) {
    if (blocks.empty()) fail(Errc::EmptyBlocks, "algebra needs at least one block");
    double trace_of_one = 0.0;
    for (const auto& b : blocks) {
        if (b.dim < 1) fail(Errc::EmptyBlocks, "block dimension must be >= 1");
        if (b.weight < 1.0 - 1e-12)
            fail(Errc::WeightBelowOne, "trace weight " + std::to_string(b.weight) + " < 1");
        trace_of_one += b.weight * b.dim;
    }
    const double d2 = delta * delta;
    if (!(delta > 0.0) || std::abs(trace_of_one - d2) > 1e-9 * (1.0 + std::abs(d2)))
        fail(Errc::TraceMismatch, "sum of weight*dim = " + std::to_string(trace_of_one) +
                                      " does not match delta^2 = " + std::to_string(d2));
    return AlgebraPtr(new MarkovAlgebra(std::move(blocks), delta, std::move(id)));
}

// -- Element --------------------------------------------------------------

Element::Element(AlgebraPtr algebra, std::vector<Matrix> data)
    : algebra_(std::move(algebra)), data_(std::move(data)) {
    if (!algebra_) fail(Errc::EmptyBlocks, "element needs an algebra");
    if (data_.size() != algebra_->block_count())
        fail(Errc::AlgebraMismatch, "block count mismatch");
    for (std::size_t k = 0; k < data_.size(); ++k) {
        const int d = algebra_->dim(k);
        if (data_[k].rows() != d || data_[k].cols() != d)
            fail(Errc::AlgebraMismatch, "block shape mismatch at block " + std::to_string(k));
        if (!finite_matrix(data_[k]))
            fail(Errc::AlgebraMismatch, "non-finite entry in block " + std::to_string(k));
    }
}

Element Element::zero(const AlgebraPtr& a) {
    std::vector<Matrix> d;
    d.reserve(a->block_count());
    for (std::size_t k = 0; k < a->block_count(); ++k) d.push_back(Matrix::Zero(a->dim(k), a->dim(k)));
    return Element(a, std::move(d));
}

Element Element::identity(const AlgebraPtr& a) {
    std::vector<Matrix> d;
    d.reserve(a->block_count());
    for (std::size_t k = 0; k < a->block_count(); ++k)
        d.push_back(Matrix::Identity(a->dim(k), a->dim(k)));
    return Element(a, std::move(d));
}

// -- arithmetic -----------------------------------------------------------

Element add(const Element& x, const Element& y) {
    check_same_algebra(x, y);
    std::vector<Matrix> d;
    d.reserve(x.block_count());
    for (std::size_t k = 0; k < x.block_count(); ++k) d.push_back(x.block(k) + y.block(k));
    return Element(x.algebra(), std::move(d));
}

Element sub(const Element& x, const Element& y) {
    check_same_algebra(x, y);
    std::vector<Matrix> d;
    d.reserve(x.block_count());
    for (std::size_t k = 0; k < x.block_count(); ++k) d.push_back(x.block(k) - y.block(k));
    return Element(x.algebra(), std::move(d));
}

Element scale(Complex c, const Element& x) {
    std::vector<Matrix> d;
    d.reserve(x.block_count());
    for (std::size_t k = 0; k < x.block_count(); ++k) d.push_back(c * x.block(k));
    return Element(x.algebra(), std::move(d));
}

Element multiply(const Element& x, const Element& y) {
    check_same_algebra(x, y);
    std::vector<Matrix> d;
    d.reserve(x.block_count());
    for (std::size_t k = 0; k < x.block_count(); ++k) d.push_back(x.block(k) * y.block(k));
    return Element(x.algebra(), std::move(d));
}

Element adjoint(const Element& x) {
    std::vector<Matrix> d;
    d.reserve(x.block_count());
    for (std::size_t k = 0; k < x.block_count(); ++k) d.push_back(x.block(k).adjoint());
    return Element(x.algebra(), std::move(d));
}

Element abs_squared(const Element& x) {
    std::vector<Matrix> d;
    d.reserve(x.block_count());
    for (std::size_t k = 0; k < x.block_count(); ++k)
        d.push_back(x.block(k).adjoint() * x.block(k));
    return Element(x.algebra(), std::move(d));
}

Element abs_element(const Element& x) {
    std::vector<Matrix> d;
    d.reserve(x.block_count());
    for (std::size_t k = 0; k < x.block_count(); ++k) {
        const Matrix& m = x.block(k);
        if (m.rows() == 1) {
            Matrix a(1, 1);
            a(0, 0) = std::abs(m(0, 0));
            d.push_back(a);
            continue;
        }
        Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU | Eigen::ComputeFullV);
        // |m| = V Sigma V*
        d.push_back(svd.matrixV() * svd.singularValues().asDiagonal() * svd.matrixV().adjoint());
    }
    return Element(x.algebra(), std::move(d));
}

// -- trace, norms, spectra --------------------------------------------------

Complex trace(const Element& x) {
    Complex t = 0.0;
    for (std::size_t k = 0; k < x.block_count(); ++k)
        t += x.algebra()->weight(k) * x.block(k).trace();
    return t;
}

SingularData singular_data(const Element& x) {
    SingularData out;
    out.sv.reserve(x.block_count());
    for (std::size_t k = 0; k < x.block_count(); ++k) {
        const Matrix& m = x.block(k);
        RVector s;
        if (m.rows() == 1) {
            s.resize(1);
            s(0) = std::abs(m(0, 0));
        } else {
            Eigen::JacobiSVD<Matrix> svd(m);
            s = svd.singularValues();
        }
        if (s.size() > 0) out.sigma_max = std::max(out.sigma_max, s(0));
        out.sv.push_back(std::move(s));
    }
    return out;
}

namespace {

// sum_k w_k sum_i (sigma / sigma_max)^p; factoring out sigma_max keeps the
// powers in range for extreme orders
double scaled_power_sum(const SingularData& s, const MarkovAlgebra& a, double p) {
    double acc = 0.0;
    for (std::size_t k = 0; k < s.sv.size(); ++k) {
        double blk = 0.0;
        for (Eigen::Index i = 0; i < s.sv[k].size(); ++i) {
            const double sv = s.sv[k](i);
            if (sv > 0.0) blk += std::pow(sv / s.sigma_max, p);
        }
        acc += a.weight(k) * blk;
    }
    return acc;
}

} // namespace

double pnorm_from(const SingularData& s, const MarkovAlgebra& a, double p) {
    if (std::isnan(p) || p <= 0.0) fail(Errc::NonPositiveP, "p-norm order must be positive");
    if (std::isinf(p)) return s.sigma_max;
    if (s.sigma_max == 0.0) return 0.0;
    return s.sigma_max * std::pow(scaled_power_sum(s, a, p), 1.0 / p);
}

double pnorm(const Element& x, double p) {
    return pnorm_from(singular_data(x), *x.algebra(), p);
}

double log_pnorm_from(const SingularData& s, const MarkovAlgebra& a, double p) {
    if (std::isnan(p) || p <= 0.0) fail(Errc::NonPositiveP, "p-norm order must be positive");
    if (s.sigma_max == 0.0) fail(Errc::ZeroElement, "log norm of the zero element");
    if (std::isinf(p)) return std::log(s.sigma_max);
    return std::log(s.sigma_max) + std::log(scaled_power_sum(s, a, p)) / p;
}

double log_pnorm(const Element& x, double p) {
    return log_pnorm_from(singular_data(x), *x.algebra(), p);
}

SpectralData spectral(const Element& x) {
    const double scale = 1.0 + max_abs(x);
    if (max_abs_diff(x, adjoint(x)) > 1e-10 * scale)
        fail(Errc::NotSelfAdjoint, "spectral decomposition needs a self-adjoint element");
    SpectralData out;
    for (std::size_t k = 0; k < x.block_count(); ++k) {
        Eigen::SelfAdjointEigenSolver<Matrix> es(x.block(k));
        RVector v = es.eigenvalues();
        Matrix u = es.eigenvectors();
        // Eigen sorts ascending; flip to descending.
        RVector vd(v.size());
        Matrix ud(u.rows(), u.cols());
        for (Eigen::Index i = 0; i < v.size(); ++i) {
            vd(i) = v(v.size() - 1 - i);
            ud.col(i) = u.col(v.size() - 1 - i);
        }
        out.values.push_back(std::move(vd));
        out.vectors.push_back(std::move(ud));
    }
    return out;
}

Element range_projection(const Element& x) {
    const SingularData s = singular_data(x);
    const double cutoff = kRankEps * s.sigma_max;
    std::vector<Matrix> d;
    d.reserve(x.block_count());
    for (std::size_t k = 0; k < x.block_count(); ++k) {
        const Matrix& m = x.block(k);
        if (m.rows() == 1) {
            Matrix p(1, 1);
            p(0, 0) = (std::abs(m(0, 0)) > cutoff && s.sigma_max > 0.0) ? 1.0 : 0.0;
            d.push_back(p);
            continue;
        }
        Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
        Matrix p = Matrix::Zero(m.rows(), m.cols());
        for (Eigen::Index i = 0; i < svd.singularValues().size(); ++i)
            if (svd.singularValues()(i) > cutoff && s.sigma_max > 0.0)
                p += svd.matrixU().col(i) * svd.matrixU().col(i).adjoint();
        d.push_back(std::move(p));
    }
    return Element(x.algebra(), std::move(d));
}

double support_from(const SingularData& s, const MarkovAlgebra& a) {
    const double cutoff = kRankEps * s.sigma_max;
    if (s.sigma_max == 0.0) return 0.0;
    double t = 0.0;
    for (std::size_t k = 0; k < s.sv.size(); ++k) {
        int rank = 0;
        for (Eigen::Index i = 0; i < s.sv[k].size(); ++i)
            if (s.sv[k](i) > cutoff) ++rank;
        t += a.weight(k) * rank;
    }
    return t;
}

double support(const Element& x) { return support_from(singular_data(x), *x.algebra()); }

// -- entropies --------------------------------------------------------------

double renyi_entropy(const Element& x, double p) {
    if (is_zero(x)) fail(Errc::ZeroElement, "Renyi entropy of the zero element");
    if (std::isnan(p) || p <= 0.0 || std::isinf(p))
        fail(Errc::NonPositiveP, "Renyi order must be a finite positive real");
    if (std::abs(p - 1.0) <= 1e-6)
        fail(Errc::PTooCloseToOne, "order within 1e-6 of 1; use entropy_limit(vn_limit)");
    return p / (1.0 - p) * log_pnorm(x, p);
}

double von_neumann_entropy(const Element& x) {
    const double scale = 1.0 + max_abs(x);
    if (max_abs_diff(x, adjoint(x)) > 1e-10 * scale)
        fail(Errc::NotPositive, "entropy needs a positive element (not self-adjoint)");
    const SpectralData sd = spectral(x);
    double h = 0.0;
    for (std::size_t k = 0; k < sd.values.size(); ++k) {
        for (Eigen::Index i = 0; i < sd.values[k].size(); ++i) {
            const double lam = sd.values[k](i);
            if (lam < -1e-10 * scale)
                fail(Errc::NotPositive, "negative eigenvalue " + std::to_string(lam));
            if (lam > 0.0) h -= x.algebra()->weight(k) * lam * std::log(lam);
        }
    }
    return h;
}

double entropy_limit(const Element& x, EntropyLimit which) {
    if (is_zero(x)) fail(Errc::ZeroElement, "entropy limit of the zero element");
    const SingularData s = singular_data(x);
    switch (which) {
        case EntropyLimit::max_entropy:
            return std::log(support_from(s, *x.algebra()));
        case EntropyLimit::min_entropy:
            return -std::log(s.sigma_max);
        case EntropyLimit::vn_limit: {
            double num = 0.0, den = 0.0;
            for (std::size_t k = 0; k < s.sv.size(); ++k)
                for (Eigen::Index i = 0; i < s.sv[k].size(); ++i) {
                    const double sv = s.sv[k](i);
                    if (sv > 0.0) {
                        num -= x.algebra()->weight(k) * sv * std::log(sv);
                        den += x.algebra()->weight(k) * sv;
                    }
                }
            return num / den;
        }
    }
    return 0.0;
}

double renyi_or_limit(const Element& x, double order) {
    if (std::isinf(order)) return entropy_limit(x, EntropyLimit::min_entropy);
    if (std::abs(order - 1.0) <= 1e-6) return entropy_limit(x, EntropyLimit::vn_limit);
    return renyi_entropy(x, order);
}

// -- sampling ----------------------------------------------------------------

std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t salt) {
    std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (salt + 1);
    z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
    z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
    return z ^ (z >> 31);
}

namespace {

Element generic_sample(const AlgebraPtr& a, std::mt19937_64& eng) {
    std::normal_distribution<double> gauss(0.0, 1.0);
    const double inv_sqrt2 = 1.0 / std::sqrt(2.0);
    std::vector<Matrix> d;
    d.reserve(a->block_count());
    for (std::size_t k = 0; k < a->block_count(); ++k) {
        Matrix m(a->dim(k), a->dim(k));
        for (int i = 0; i < a->dim(k); ++i)
            for (int j = 0; j < a->dim(k); ++j) {
                const double re = gauss(eng);
                const double im = gauss(eng);
                m(i, j) = Complex(re * inv_sqrt2, im * inv_sqrt2);
            }
        d.push_back(std::move(m));
    }
    return Element(a, std::move(d));
}

} // namespace

Element random_element(const AlgebraPtr& a, RandomKind kind, std::uint64_t seed) {
    std::mt19937_64 eng(mix_seed(seed, static_cast<std::uint64_t>(kind)));
    Element g = generic_sample(a, eng);
    switch (kind) {
        case RandomKind::generic:
            return g;
        case RandomKind::self_adjoint:
            return scale(0.5, add(g, adjoint(g)));
        case RandomKind::positive:
            return abs_squared(g);
        case RandomKind::unitary: {
            std::vector<Matrix> d;
            d.reserve(g.block_count());
            for (std::size_t k = 0; k < g.block_count(); ++k) {
                const Matrix& m = g.block(k);
                if (m.rows() == 1) {
                    Matrix u(1, 1);
                    const double r = std::abs(m(0, 0));
                    u(0, 0) = r > 0.0 ? m(0, 0) / r : Complex(1.0, 0.0);
                    d.push_back(u);
                    continue;
                }
                Eigen::HouseholderQR<Matrix> qr(m);
                d.push_back(Matrix(qr.householderQ()));
            }
            return Element(a, std::move(d));
        }
        case RandomKind::projection: {
            Element h = scale(0.5, add(g, adjoint(g)));
            SpectralData sd = spectral(h);
            std::vector<double> all;
            for (const auto& v : sd.values)
                for (Eigen::Index i = 0; i < v.size(); ++i) all.push_back(v(i));
            std::sort(all.begin(), all.end());
            const std::size_t n = all.size();
            const double median =
                n % 2 == 1 ? all[n / 2] : 0.5 * (all[n / 2 - 1] + all[n / 2]);
            std::vector<Matrix> d;
            d.reserve(h.block_count());
            for (std::size_t k = 0; k < h.block_count(); ++k) {
                Matrix p = Matrix::Zero(a->dim(k), a->dim(k));
                for (Eigen::Index i = 0; i < sd.values[k].size(); ++i)
                    if (sd.values[k](i) > median)
                        p += sd.vectors[k].col(i) * sd.vectors[k].col(i).adjoint();
                d.push_back(std::move(p));
            }
            return Element(a, std::move(d));
        }
    }
    return g;
}

// -- helpers -------------------------------------------------------------------

double max_abs_diff(const Element& x, const Element& y) {
    check_same_algebra(x, y);
    double m = 0.0;
    for (std::size_t k = 0; k < x.block_count(); ++k)
        m = std::max(m, (x.block(k) - y.block(k)).cwiseAbs().maxCoeff());
    return m;
}

double max_abs(const Element& x) {
    double m = 0.0;
    for (std::size_t k = 0; k < x.block_count(); ++k)
        m = std::max(m, x.block(k).cwiseAbs().maxCoeff());
    return m;
}

bool is_zero(const Element& x) { return max_abs(x) == 0.0; }

bool same_algebra(const Element& x, const Element& y) { return x.algebra() == y.algebra(); }

CVector to_coords(const Element& x) {
    CVector v(x.algebra()->coord_count());
    Eigen::Index at = 0;
    for (std::size_t k = 0; k < x.block_count(); ++k) {
        const Matrix& m = x.block(k);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) v(at++) = m(i, j);
    }
    return v;
}

Element from_coords(const AlgebraPtr& a, const CVector& v) {
    if (static_cast<std::size_t>(v.size()) != a->coord_count())
        fail(Errc::AlgebraMismatch, "coordinate count mismatch");
    std::vector<Matrix> d;
    d.reserve(a->block_count());
    Eigen::Index at = 0;
    for (std::size_t k = 0; k < a->block_count(); ++k) {
        Matrix m(a->dim(k), a->dim(k));
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) m(i, j) = v(at++);
        d.push_back(std::move(m));
    }
    return Element(a, std::move(d));
}

std::uint64_t element_hash(const Element& x) {
    std::uint64_t h = 1469598103934665603ULL;
    auto mix = [&h](std::uint64_t v) {
        for (int b = 0; b < 8; ++b) {
            h ^= (v >> (8 * b)) & 0xffULL;
            h *= 1099511628211ULL;
        }
    };
    auto mixd = [&](double d) {
        std::uint64_t bits;
        static_assert(sizeof(bits) == sizeof(d));
        std::memcpy(&bits, &d, sizeof(bits));
        mix(bits);
    };
    for (std::size_t k = 0; k < x.block_count(); ++k) {
        mix(static_cast<std::uint64_t>(x.block(k).rows()));
        const Matrix& m = x.block(k);
        for (Eigen::Index i = 0; i < m.rows(); ++i)
            for (Eigen::Index j = 0; j < m.cols(); ++j) {
                mixd(m(i, j).real());
                mixd(m(i, j).imag());
            }
    }
    return h;
}

} // namespace ncfa
