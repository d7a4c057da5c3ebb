#pragma once

#include <complex>
#include <stdexcept>
#include <string>

#include <Eigen/Dense>

namespace slinv {

using cplx = std::complex<double>;
using CVec = Eigen::VectorXcd;
using RVec = Eigen::VectorXd;
using CMat = Eigen::MatrixXcd;

inline constexpr double pi = 3.14159265358979323846;

class Error : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

#define SLINV_ERROR(Name)                                        \
    class Name : public Error {                                  \
    public:                                                      \
        explicit Name(const std::string& what) : Error(what) {}  \
    }

SLINV_ERROR(InvalidArgument);
SLINV_ERROR(NormalizationViolation);
SLINV_ERROR(CommonRoot);
SLINV_ERROR(DimensionMismatch);
SLINV_ERROR(StepFailure);
SLINV_ERROR(RootLoss);
SLINV_ERROR(PoleProximity);
SLINV_ERROR(IllConditioned);
SLINV_ERROR(ParityMismatch);
SLINV_ERROR(DuplicateEigenvalue);
SLINV_ERROR(RankDeficient);

#undef SLINV_ERROR

// Uniform grid on [0, length] with M cells.
struct Grid {
    int cells = 0;
    double length = pi;

    Grid() = default;
    Grid(int m, double len);

    int nodes() const { return cells + 1; }
    double step() const { return length / cells; }
    double node(int k) const { return k * length / cells; }
    RVec points() const;
    // Trapezoid weights.
    RVec trapezoid() const;
    // Fourth-order endpoint-corrected trapezoid weights (falls back to trapezoid for M < 8).
    RVec weights() const;

    bool operator==(const Grid& o) const { return cells == o.cells && length == o.length; }
};

// rho = sqrt(lambda) with arg in [-pi/2, pi/2).
cplx branch_sqrt(cplx lambda);

// sin(rho x)/rho, entire in lambda = rho^2.
cplx sinc_rho(cplx rho, double x);

// Magnitude envelope |rho|^k e^{|Im rho| x} used as a natural scale.
double envelope(cplx rho, int k, double x = pi);

}  // namespace slinv
