#pragma once

#include <complex>
#include <cstddef>
#include <functional>
#include <memory>
#include <string>
#include <vector>

namespace ninls {

using cplx = std::complex<double>;

inline constexpr double kPi = 3.14159265358979323846;
inline constexpr double kTwoPi = 2.0 * kPi;

// Which directions are periodic: TxR has x periodic and y on the line.
enum class Geometry { TxR, RxT, TxT };

enum class Representation { physical, spectral };

// Focusing corresponds to -|u|^2 u on the right hand side.
enum class Nonlinearity { focusing, defocusing };

const char* to_string(Geometry g);
const char* to_string(Nonlinearity s);
Geometry parse_geometry(const std::string& s);
Nonlinearity parse_nonlinearity(const std::string& s);

struct DomainSpec {
  Geometry geometry = Geometry::TxT;
  double period_x = kTwoPi;
  double period_y = kTwoPi;
  int nx = 32;
  int ny = 32;

  bool x_periodic() const { return geometry != Geometry::RxT; }
  bool y_periodic() const { return geometry != Geometry::TxR; }

  static DomainSpec torus(int nx, int ny);
  // x periodic, y truncated to a box of length L.
  static DomainSpec cylinder_txr(int nx, int ny, double L = 32.0 * kPi);
  // x truncated to a box of length L, y periodic.
  static DomainSpec cylinder_rxt(int nx, int ny, double L = 32.0 * kPi);

  // Throws ConfigError naming the violated constraint.
  void validate() const;

  bool operator==(const DomainSpec&) const = default;
};

struct ModelParams {
  int epsilon = 1;  // 0 or 1
  double alpha = -1.0;
  Nonlinearity sign = Nonlinearity::focusing;

  // +1 for defocusing, -1 for focusing: i u_t + ... = sign_factor |u|^2 u.
  double sign_factor() const { return sign == Nonlinearity::defocusing ? 1.0 : -1.0; }

  void validate() const;
  // Probes built on the alpha < 0 theory call this.
  void require_negative_alpha(const char* who) const;
};

class FourierGrid {
 public:
  static std::shared_ptr<const FourierGrid> make(const DomainSpec& spec);

  const DomainSpec& spec() const { return spec_; }
  int nx() const { return spec_.nx; }
  int ny() const { return spec_.ny; }
  std::size_t size() const { return static_cast<std::size_t>(spec_.nx) * spec_.ny; }
  std::size_t index(int i, int j) const { return static_cast<std::size_t>(i) * spec_.ny + j; }

  // FFT-natural order: 0, 1, ..., n/2-1, -n/2, ..., -1 (times 2pi/L on the line).
  const std::vector<double>& freqs_x() const { return fx_; }
  const std::vector<double>& freqs_y() const { return fy_; }
  // Integer mode labels in natural order.
  const std::vector<int>& modes_x() const { return mx_; }
  const std::vector<int>& modes_y() const { return my_; }
  const std::vector<double>& points_x() const { return px_; }
  const std::vector<double>& points_y() const { return py_; }

  std::vector<double> sorted_freqs_x() const;
  std::vector<double> sorted_freqs_y() const;
  // Natural-order index of an integer mode label, or -1 if it is outside [-n/2, n/2).
  int mode_index_x(int m) const;
  int mode_index_y(int m) const;

  double dx() const { return spec_.period_x / spec_.nx; }
  double dy() const { return spec_.period_y / spec_.ny; }
  double area() const { return spec_.period_x * spec_.period_y; }
  double cell() const { return dx() * dy(); }

  // (-1)^m on truncated directions (points start at -L/2), 1 on periodic ones.
  const std::vector<double>& parity_x() const { return sx_; }
  const std::vector<double>& parity_y() const { return sy_; }

 private:
  explicit FourierGrid(const DomainSpec& spec);

  DomainSpec spec_;
  std::vector<double> fx_, fy_, px_, py_, sx_, sy_;
  std::vector<int> mx_, my_;
};

using GridPtr = std::shared_ptr<const FourierGrid>;

// Complex field on a grid, either as point values or as Fourier coefficients.
// Coefficients satisfy f(x, y) = sum c(k1, k2) exp(i(k1 x + k2 y)); storage is
// row-major with x as the slow index.
class Field {
 public:
  Field(GridPtr grid, std::vector<cplx> data, Representation rep);

  static Field zeros(GridPtr grid, Representation rep = Representation::physical);
  static Field sample(GridPtr grid, const std::function<cplx(double, double)>& f);
  static Field from_coefficients(GridPtr grid,
                                 const std::function<cplx(double, double)>& coeff);

  const FourierGrid& grid() const { return *grid_; }
  const GridPtr& grid_ptr() const { return grid_; }
  const std::vector<cplx>& data() const { return data_; }
  Representation representation() const { return rep_; }
  bool is_physical() const { return rep_ == Representation::physical; }
  bool is_spectral() const { return rep_ == Representation::spectral; }
  cplx at(int i, int j) const { return data_[grid_->index(i, j)]; }

  // No-ops when already in the requested representation.
  Field to_physical() const;
  Field to_spectral() const;

  bool all_finite() const;

  Field operator+(const Field& o) const;
  Field operator-(const Field& o) const;
  Field operator*(cplx s) const;

 private:
  void require_compatible(const Field& o) const;

  GridPtr grid_;
  std::vector<cplx> data_;
  Representation rep_;
};

Field operator*(cplx s, const Field& f);

// Physical -> spectral with 1/(nx*ny) normalization; throws if f is spectral.
Field forward_transform(const Field& f);
// Spectral -> physical; throws if f is physical.
Field inverse_transform(const Field& f);

// In-place helpers on raw coefficient arrays of a grid (same conventions).
void coefficients_to_values(const FourierGrid& g, std::vector<cplx>& data);
void values_to_coefficients(const FourierGrid& g, std::vector<cplx>& data);

double dispersion_omega(const ModelParams& p, double k);
double full_symbol(const ModelParams& p, double k1, double k2);

// Multiplies the coefficients by m(k1, k2). Returns a field in the same
// representation as the input. Throws ConfigError if m is not finite.
Field apply_multiplier(const Field& f, const std::function<cplx(double, double)>& m);

// max |f| on the boundary rows/columns of truncated directions over max |f|.
// Zero for fully periodic grids.
double edge_ratio(const Field& f);
inline constexpr double kTruncationThreshold = 1e-10;
inline bool truncation_ok(const Field& f) { return edge_ratio(f) <= kTruncationThreshold; }

// 2/3-rule mask: true when |m_x| <= nx/3 and |m_y| <= ny/3.
std::vector<unsigned char> dealias_mask(const FourierGrid& g);

}  // namespace ninls
