#pragma once

#include <string>
#include <vector>

namespace fracspec {

enum class BoundaryKind { Dirichlet, Robin };

/// Homogeneous Dirichlet data or the Robin condition du/dn + beta u = 0 on [0, 1].
class BoundarySpec {
public:
    static BoundarySpec dirichlet() { return BoundarySpec(BoundaryKind::Dirichlet, 0.0); }
    /// Throws InvalidArgument unless beta > 0 and finite.
    static BoundarySpec robin(double beta);

    BoundaryKind kind() const { return kind_; }
    bool is_dirichlet() const { return kind_ == BoundaryKind::Dirichlet; }
    bool is_robin() const { return kind_ == BoundaryKind::Robin; }
    /// Heat-transfer coefficient; 0 for Dirichlet.
    double beta() const { return beta_; }

    std::string describe() const;

    friend bool operator==(const BoundarySpec&, const BoundarySpec&) = default;

private:
    BoundarySpec(BoundaryKind kind, double beta) : kind_(kind), beta_(beta) {}

    BoundaryKind kind_;
    double beta_;
};

/// One eigenvalue of -d^2/dx^2 on [0, 1] with the data of its L2-normalized eigenfunction.
struct EigenPair {
    int index = 1;          ///< k >= 1
    double lambda = 0.0;    ///< eigenvalue
    double amplitude = 0.0; ///< normalization constant
    BoundarySpec boundary = BoundarySpec::dirichlet();
};

/// Relative root tolerance used when none is given.
inline constexpr double kDefaultRootTolerance = 1e-14;

/// k^2 pi^2 with amplitude sqrt(2), k = 1..n.
std::vector<EigenPair> dirichlet_eigs(int n);

/// Characteristic function 2 sqrt(l) cos(sqrt(l)) + (beta - l / beta) sin(sqrt(l)).
double robin_char(double beta, double lambda);

/**
 * First n Robin eigenvalues on [0, 1].
 *
 * The k-th root lies in sqrt(lambda) in ((k - 1) pi, k pi); at the endpoints the
 * characteristic function equals 2 m pi (-1)^m, so each bracket carries a sign
 * change. The root lambda = 0 of the characteristic function is spurious (only
 * the zero function satisfies both Robin conditions there) and is excluded.
 *
 * Throws BracketFailure if a bracket shows no sign change, ToleranceNotReached if
 * the iteration budget is exhausted.
 */
std::vector<EigenPair> robin_eigs(double beta, int n, double tol = kDefaultRootTolerance);

/// Eigenpairs for either boundary kind.
std::vector<EigenPair> eigenpairs(const BoundarySpec& boundary, int n, double tol = kDefaultRootTolerance);

/// sqrt(2) beta / sqrt(beta^2 + 2 beta + lambda): the L2 normalization of sin(sx) + (s / beta) cos(sx)
/// once the characteristic equation holds, since then the squared norm is 1/2 + s^2 / (2 beta^2) + 1 / beta.
double robin_amplitude(double beta, double lambda);

double eigenfunction_eval(const EigenPair& pair, double x);
double eigenfunction_deriv(const EigenPair& pair, double x);
double eigenfunction_second_deriv(const EigenPair& pair, double x);

}  // namespace fracspec
