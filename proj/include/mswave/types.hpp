#ifndef MSWAVE_TYPES_HPP
#define MSWAVE_TYPES_HPP

#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

namespace mswave {

using Complex = std::complex<double>;

inline constexpr Complex I{0.0, 1.0};

// Reduced Planck constant, J s. SI conversions enter only through the
// de Broglie helper and the CLI; everything else is nondimensional.
inline constexpr double HBAR_SI = 1.054571817e-34;

struct Vec3 {
    double x = 0.0;
    double y = 0.0;
    double z = 0.0;

    double norm() const { return std::sqrt(x * x + y * y + z * z); }
};

inline Vec3 operator-(const Vec3& a, const Vec3& b) { return {a.x - b.x, a.y - b.y, a.z - b.z}; }
inline Vec3 operator+(const Vec3& a, const Vec3& b) { return {a.x + b.x, a.y + b.y, a.z + b.z}; }
inline double dot(const Vec3& a, const Vec3& b) { return a.x * b.x + a.y * b.y + a.z * b.z; }
inline bool operator==(const Vec3& a, const Vec3& b) { return a.x == b.x && a.y == b.y && a.z == b.z; }

// Linear system became (numerically) singular; carries a condition estimate.
class SolverError : public std::runtime_error {
public:
    SolverError(const std::string& what, double condition_estimate)
        : std::runtime_error(what), condition_estimate_(condition_estimate) {}
    double condition_estimate() const { return condition_estimate_; }

private:
    double condition_estimate_;
};

// Quadrature did not reach the requested accuracy; carries the achieved estimate.
class QuadratureError : public std::runtime_error {
public:
    QuadratureError(const std::string& what, double achieved_estimate)
        : std::runtime_error(what), achieved_estimate_(achieved_estimate) {}
    double achieved_estimate() const { return achieved_estimate_; }

private:
    double achieved_estimate_;
};

// Evaluation requested at (or numerically on top of) a pole.
class PoleError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace mswave

#endif
