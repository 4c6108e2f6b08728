#include "ninls/spectral.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "fft.hpp"
#include "ninls/error.hpp"

namespace ninls {
namespace {

bool is_pow2(int n) { return n > 0 && (n & (n - 1)) == 0; }

void check_count(const char* name, int n) {
  if (n < 8 || n % 2 != 0 || !is_pow2(n)) {
    std::ostringstream os;
    os << name << " must be a power of two >= 8 (got " << n << ")";
    throw ConfigError(os.str());
  }
}

void check_period(const char* name, double period, bool periodic) {
  if (periodic) {
    if (period != kTwoPi) {
      throw ConfigError(std::string(name) + " must equal 2*pi on a periodic direction");
    }
  } else if (!std::isfinite(period) || period < 4.0 * kPi) {
    std::ostringstream os;
    os << name << " must be a finite truncation length >= 4*pi (got " << period << ")";
    throw ConfigError(os.str());
  }
}

void fill_axis(int n, double period, bool periodic, std::vector<int>& modes,
               std::vector<double>& freqs, std::vector<double>& points,
               std::vector<double>& parity) {
  modes.resize(n);
  freqs.resize(n);
  points.resize(n);
  parity.resize(n);
  const double h = period / n;
  const double start = periodic ? 0.0 : -0.5 * period;
  for (int j = 0; j < n; ++j) {
    const int m = j < n / 2 ? j : j - n;
    modes[j] = m;
    // Integer frequencies stay exact on periodic directions.
    freqs[j] = periodic ? static_cast<double>(m) : kTwoPi * m / period;
    points[j] = start + h * j;
    parity[j] = (periodic || m % 2 == 0) ? 1.0 : -1.0;
  }
}

}  // namespace

const char* to_string(Geometry g) {
  switch (g) {
    case Geometry::TxR:
      return "TxR";
    case Geometry::RxT:
      return "RxT";
    case Geometry::TxT:
      return "TxT";
  }
  return "?";
}

const char* to_string(Nonlinearity s) {
  return s == Nonlinearity::focusing ? "focusing" : "defocusing";
}

Geometry parse_geometry(const std::string& s) {
  if (s == "TxR") return Geometry::TxR;
  if (s == "RxT") return Geometry::RxT;
  if (s == "TxT") return Geometry::TxT;
  throw ConfigError("geometry must be one of TxR, RxT, TxT (got '" + s + "')");
}

Nonlinearity parse_nonlinearity(const std::string& s) {
  if (s == "focusing") return Nonlinearity::focusing;
  if (s == "defocusing") return Nonlinearity::defocusing;
  throw ConfigError("nonlinearity must be 'focusing' or 'defocusing' (got '" + s + "')");
}

DomainSpec DomainSpec::torus(int nx, int ny) { return {Geometry::TxT, kTwoPi, kTwoPi, nx, ny}; }

DomainSpec DomainSpec::cylinder_txr(int nx, int ny, double L) {
  return {Geometry::TxR, kTwoPi, L, nx, ny};
}

DomainSpec DomainSpec::cylinder_rxt(int nx, int ny, double L) {
  return {Geometry::RxT, L, kTwoPi, nx, ny};
}

void DomainSpec::validate() const {
  check_count("nx", nx);
  check_count("ny", ny);
  check_period("period_x", period_x, x_periodic());
  check_period("period_y", period_y, y_periodic());
}

void ModelParams::validate() const {
  if (epsilon != 0 && epsilon != 1) throw ConfigError("epsilon must be 0 or 1");
  if (!std::isfinite(alpha) || alpha == 0.0) throw ConfigError("alpha must be finite and nonzero");
}

void ModelParams::require_negative_alpha(const char* who) const {
  if (!(alpha < 0.0)) {
    throw ConfigError(std::string(who) + " requires alpha < 0");
  }
}

FourierGrid::FourierGrid(const DomainSpec& spec) : spec_(spec) {
  fill_axis(spec.nx, spec.period_x, spec.x_periodic(), mx_, fx_, px_, sx_);
  fill_axis(spec.ny, spec.period_y, spec.y_periodic(), my_, fy_, py_, sy_);
}

std::shared_ptr<const FourierGrid> FourierGrid::make(const DomainSpec& spec) {
  spec.validate();
  return std::shared_ptr<const FourierGrid>(new FourierGrid(spec));
}

std::vector<double> FourierGrid::sorted_freqs_x() const {
  auto v = fx_;
  std::sort(v.begin(), v.end());
  return v;
}

std::vector<double> FourierGrid::sorted_freqs_y() const {
  auto v = fy_;
  std::sort(v.begin(), v.end());
  return v;
}

int FourierGrid::mode_index_x(int m) const {
  const int n = spec_.nx;
  if (m < -n / 2 || m >= n / 2) return -1;
  return m >= 0 ? m : m + n;
}

int FourierGrid::mode_index_y(int m) const {
  const int n = spec_.ny;
  if (m < -n / 2 || m >= n / 2) return -1;
  return m >= 0 ? m : m + n;
}

Field::Field(GridPtr grid, std::vector<cplx> data, Representation rep)
    : grid_(std::move(grid)), data_(std::move(data)), rep_(rep) {
  if (!grid_) throw ConfigError("field needs a grid");
  if (data_.size() != grid_->size()) {
    std::ostringstream os;
    os << "field data size " << data_.size() << " does not match grid size " << grid_->size();
    throw ConfigError(os.str());
  }
}

Field Field::zeros(GridPtr grid, Representation rep) {
  const auto n = grid->size();
  return Field(std::move(grid), std::vector<cplx>(n), rep);
}

Field Field::sample(GridPtr grid, const std::function<cplx(double, double)>& f) {
  std::vector<cplx> d(grid->size());
  const auto& px = grid->points_x();
  const auto& py = grid->points_y();
  for (int i = 0; i < grid->nx(); ++i)
    for (int j = 0; j < grid->ny(); ++j) d[grid->index(i, j)] = f(px[i], py[j]);
  return Field(std::move(grid), std::move(d), Representation::physical);
}

Field Field::from_coefficients(GridPtr grid, const std::function<cplx(double, double)>& coeff) {
  std::vector<cplx> d(grid->size());
  const auto& fx = grid->freqs_x();
  const auto& fy = grid->freqs_y();
  for (int i = 0; i < grid->nx(); ++i)
    for (int j = 0; j < grid->ny(); ++j) d[grid->index(i, j)] = coeff(fx[i], fy[j]);
  return Field(std::move(grid), std::move(d), Representation::spectral);
}

Field Field::to_physical() const { return is_physical() ? *this : inverse_transform(*this); }

Field Field::to_spectral() const { return is_spectral() ? *this : forward_transform(*this); }

bool Field::all_finite() const {
  return std::all_of(data_.begin(), data_.end(),
                     [](const cplx& z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); });
}

void Field::require_compatible(const Field& o) const {
  if (grid_ != o.grid_ && !(grid_->spec() == o.grid_->spec())) {
    throw ConfigError("fields live on different grids");
  }
  if (rep_ != o.rep_) throw ConfigError("fields are in different representations");
}

Field Field::operator+(const Field& o) const {
  require_compatible(o);
  auto d = data_;
  for (std::size_t k = 0; k < d.size(); ++k) d[k] += o.data_[k];
  return Field(grid_, std::move(d), rep_);
}

Field Field::operator-(const Field& o) const {
  require_compatible(o);
  auto d = data_;
  for (std::size_t k = 0; k < d.size(); ++k) d[k] -= o.data_[k];
  return Field(grid_, std::move(d), rep_);
}

Field Field::operator*(cplx s) const {
  auto d = data_;
  for (auto& z : d) z *= s;
  return Field(grid_, std::move(d), rep_);
}

Field operator*(cplx s, const Field& f) { return f * s; }

void values_to_coefficients(const FourierGrid& g, std::vector<cplx>& data) {
  const int nx = g.nx(), ny = g.ny();
  detail::fft2d(data.data(), nx, ny, -1);
  const double scale = 1.0 / (static_cast<double>(nx) * ny);
  const auto& sx = g.parity_x();
  const auto& sy = g.parity_y();
  for (int i = 0; i < nx; ++i) {
    cplx* row = data.data() + g.index(i, 0);
    const double a = scale * sx[i];
    for (int j = 0; j < ny; ++j) row[j] *= a * sy[j];
  }
}

void coefficients_to_values(const FourierGrid& g, std::vector<cplx>& data) {
  const int nx = g.nx(), ny = g.ny();
  const auto& sx = g.parity_x();
  const auto& sy = g.parity_y();
  const bool periodic = g.spec().x_periodic() && g.spec().y_periodic();
  if (!periodic) {
    for (int i = 0; i < nx; ++i) {
      cplx* row = data.data() + g.index(i, 0);
      for (int j = 0; j < ny; ++j) row[j] *= sx[i] * sy[j];
    }
  }
  detail::fft2d(data.data(), nx, ny, +1);
}

Field forward_transform(const Field& f) {
  if (!f.is_physical()) throw ConfigError("forward_transform expects a physical field");
  auto d = f.data();
  values_to_coefficients(f.grid(), d);
  return Field(f.grid_ptr(), std::move(d), Representation::spectral);
}

Field inverse_transform(const Field& f) {
  if (!f.is_spectral()) throw ConfigError("inverse_transform expects a spectral field");
  auto d = f.data();
  coefficients_to_values(f.grid(), d);
  return Field(f.grid_ptr(), std::move(d), Representation::physical);
}

double dispersion_omega(const ModelParams& p, double k) {
  return p.epsilon * k * k - p.alpha * k * k * k * k;
}

double full_symbol(const ModelParams& p, double k1, double k2) {
  return dispersion_omega(p, k1) + k2 * k2;
}

Field apply_multiplier(const Field& f, const std::function<cplx(double, double)>& m) {
  const bool was_physical = f.is_physical();
  Field s = f.to_spectral();
  const auto& g = s.grid();
  auto d = s.data();
  const auto& fx = g.freqs_x();
  const auto& fy = g.freqs_y();
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      const cplx w = m(fx[i], fy[j]);
      if (!std::isfinite(w.real()) || !std::isfinite(w.imag())) {
        std::ostringstream os;
        os << "multiplier is not finite at (" << fx[i] << ", " << fy[j] << ")";
        throw ConfigError(os.str());
      }
      d[g.index(i, j)] *= w;
    }
  }
  Field out(s.grid_ptr(), std::move(d), Representation::spectral);
  return was_physical ? inverse_transform(out) : out;
}

double edge_ratio(const Field& f) {
  const Field u = f.to_physical();
  const auto& g = u.grid();
  double peak = 0.0, edge = 0.0;
  for (int i = 0; i < g.nx(); ++i) {
    for (int j = 0; j < g.ny(); ++j) {
      const double a = std::abs(u.at(i, j));
      peak = std::max(peak, a);
      const bool on_edge = (!g.spec().y_periodic() && (j == 0 || j == g.ny() - 1)) ||
                           (!g.spec().x_periodic() && (i == 0 || i == g.nx() - 1));
      if (on_edge) edge = std::max(edge, a);
    }
  }
  return peak > 0.0 ? edge / peak : 0.0;
}

std::vector<unsigned char> dealias_mask(const FourierGrid& g) {
  std::vector<unsigned char> m(g.size());
  const auto& mx = g.modes_x();
  const auto& my = g.modes_y();
  for (int i = 0; i < g.nx(); ++i)
    for (int j = 0; j < g.ny(); ++j)
      m[g.index(i, j)] = (3 * std::abs(mx[i]) <= g.nx() && 3 * std::abs(my[j]) <= g.ny()) ? 1 : 0;
  return m;
}

}  // namespace ninls
