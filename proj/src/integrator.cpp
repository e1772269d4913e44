#include "fvlimit/integrator.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iomanip>
#include <limits>
#include <stdexcept>

#include "fvlimit/boundary.hpp"

namespace fvlimit {

void RunConfig::validate() const {
  if (!(cfl > 0.0)) throw std::invalid_argument("cfl must be positive");
  if (stages.empty()) throw std::invalid_argument("at least one stage coefficient is required");
  double prev = 0.0;
  for (double a : stages) {
    if (!(a > prev) || a > 1.0) throw std::invalid_argument("stage coefficients must increase strictly within (0, 1]");
    prev = a;
  }
  if (mode == TimeMode::Unsteady && !(t_end >= 0.0)) throw std::invalid_argument("t_end must be non-negative");
  if (mode == TimeMode::Steady && max_iters < 1) throw std::invalid_argument("max_iters must be at least 1");
  if (!(limiter.K >= 0.0)) throw std::invalid_argument("K must be non-negative");
}

void ResidualHistory::write(const std::filesystem::path& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
  out << "# iteration normalized_density_residual\n";
  out << std::setprecision(std::numeric_limits<double>::max_digits10);
  for (std::size_t n = 0; n < iteration.size(); ++n) out << iteration[n] << ' ' << residual[n] << '\n';
  if (!out) throw std::runtime_error("failed writing " + path.string());
}

void compute_time_steps(const Mesh& mesh, const StateField& q, double cfl, const Gas& gas, Eigen::VectorXd& dt) {
  const Index nc = mesh.num_cells();
  std::vector<PrimitiveState> w(static_cast<std::size_t>(nc));
  std::vector<double> c(static_cast<std::size_t>(nc));
  for (Index i = 0; i < nc; ++i) {
    try {
      w[i] = to_primitive(Vector4d(q.col(i)), gas);
    } catch (const NonPhysicalState& e) {
      throw NonPhysicalState(e.what(), i);
    }
    c[i] = sound_speed(w[i], gas);
  }
  Eigen::VectorXd sum = Eigen::VectorXd::Zero(nc);
  for (Index k = 0; k < mesh.num_faces(); ++k) {
    const Face& f = mesh.face(k);
    const Vector2d& n = mesh.face_normal(k);
    const double S = mesh.face_length(k);
    sum[f.left] += (std::abs(w[f.left].u * n[0] + w[f.left].v * n[1]) + c[f.left]) * S;
    if (!f.boundary()) sum[f.right] += (std::abs(w[f.right].u * n[0] + w[f.right].v * n[1]) + c[f.right]) * S;
  }
  dt.resize(nc);
  for (Index i = 0; i < nc; ++i) dt[i] = cfl * mesh.area(i) / sum[i];
}

StateField uniform_state(const Mesh& mesh, const PrimitiveState& w, const Gas& gas) {
  const Vector4d q = to_conservative(w, gas);
  return q.replicate(1, mesh.num_cells());
}

Solver::Solver(const Mesh& mesh, RunConfig config)
    : mesh_(&mesh), config_(std::move(config)), stencils_(build_stencils(mesh)), weights_(mesh, stencils_) {
  config_.validate();
}

void Solver::check_physical(const StateField& q) {
  const Index nc = mesh_->num_cells();
  primitive_.resize(static_cast<std::size_t>(nc));
  for (Index i = 0; i < nc; ++i) {
    const Vector4d qi = q.col(i);
    if (!std::isfinite(qi.sum()) || !is_physical(qi, config_.gas)) {
      throw NonPhysicalState("non-physical cell state (rho " + std::to_string(qi[0]) + ", p " +
                                 std::to_string(pressure(qi, config_.gas)) + ")",
                             i, step_);
    }
    primitive_[i] = to_primitive(qi, config_.gas);
  }
}

void Solver::assemble_residual(const StateField& q, StateField& residual) {
  const Mesh& mesh = *mesh_;
  const Gas& gas = config_.gas;
  check_physical(q);

  const Index nc = mesh.num_cells();
  if (config_.first_order) {
    gradients_.dx.setZero(4, nc);
    gradients_.dy.setZero(4, nc);
    limits_.phi.setZero(4, nc);
    limits_.omega_p.setOnes(nc);
  } else {
    weights_.average(q, vertex_values_);
    green_gauss(mesh, vertex_values_, gradients_);
    apply_limiters(mesh, stencils_, weights_, q, vertex_values_, gradients_, config_.limiter, gas, limits_,
                   limiter_ws_);
  }

  const auto reconstruct = [&](Index i, const Vector2d& r) -> Vector4d {
    const Vector2d d = r - mesh.centroid(i);
    const Vector4d slope = gradients_.dx.col(i) * d[0] + gradients_.dy.col(i) * d[1];
    return q.col(i) + limits_.phi.col(i).cwiseProduct(slope);
  };

  if (!config_.first_order) {
    for (Index i = 0; i < nc; ++i) {
      for (Index k : mesh.cell_faces()[i]) {
        if (is_physical(reconstruct(i, mesh.face_midpoint(k)), gas)) continue;
        if (!config_.positivity_fallback) {
          throw NonPhysicalState("non-physical reconstructed face state", i, step_);
        }
        limits_.phi.col(i).setZero();
        ++fallback_count_;
        break;
      }
    }
  }

  // Each face contributes F - F(q_cell) so that a uniform state gives an
  // exactly zero residual; the subtracted terms cancel on closed cells.
  residual.setZero(4, nc);
  boundary_flux_.setZero();
  for (Index k = 0; k < mesh.num_faces(); ++k) {
    const Face& f = mesh.face(k);
    const Vector2d& n = mesh.face_normal(k);
    const Vector2d& mid = mesh.face_midpoint(k);
    const double S = mesh.face_length(k);

    const Vector4d qL = reconstruct(f.left, mid);
    Vector4d qR;
    if (f.boundary()) {
      qR = ghost_state(qL, mesh.patches()[f.patch], n, gas);
    } else {
      qR = reconstruct(f.right, mid);
    }
    const Vector4d F = numerical_flux(config_.flux, qL, qR, n, gas);

    residual.col(f.left) -= (F - physical_flux(primitive_[f.left], n, gas)) * S;
    if (f.boundary()) {
      boundary_flux_ += F * S;
    } else {
      residual.col(f.right) += (F - physical_flux(primitive_[f.right], n, gas)) * S;
    }
  }
}

void Solver::time_steps(const StateField& q, Eigen::VectorXd& dt) const {
  compute_time_steps(*mesh_, q, config_.cfl, config_.gas, dt);
  if (config_.mode == TimeMode::Unsteady) dt.setConstant(dt.minCoeff());
}

double Solver::rk_step(StateField& q, const Eigen::VectorXd& dt) {
  const Mesh& mesh = *mesh_;
  q0_ = q;
  double first = 0.0;
  for (std::size_t m = 0; m < config_.stages.size(); ++m) {
    assemble_residual(q, residual_);
    if (m == 0) {
      double sum = 0.0;
      for (Index i = 0; i < mesh.num_cells(); ++i) {
        const double r = residual_(0, i) / mesh.area(i);
        sum += r * r;
      }
      first = std::sqrt(sum / mesh.num_cells());
    }
    const double alpha = config_.stages[m];
    for (Index i = 0; i < mesh.num_cells(); ++i) {
      q.col(i) = q0_.col(i) + (alpha * dt[i] / mesh.area(i)) * residual_.col(i);
    }
  }
  check_physical(q);
  return first;
}

std::int64_t Solver::run_unsteady(StateField& q, const StepObserver& observer) {
  double t = 0.0;
  step_ = 0;
  Eigen::VectorXd dt;
  while (t < config_.t_end) {
    time_steps(q, dt);
    double h = dt[0];
    bool last = false;
    if (t + h >= config_.t_end) {
      h = config_.t_end - t;
      last = true;
    }
    dt.setConstant(h);
    ++step_;
    rk_step(q, dt);
    t = last ? config_.t_end : t + h;
    if (observer) observer(step_, t, q);
  }
  return step_;
}

ResidualHistory Solver::run_steady(StateField& q) {
  ResidualHistory history;
  const auto start = std::chrono::steady_clock::now();
  Eigen::VectorXd dt;
  double reference = 0.0;
  step_ = 0;
  for (std::int64_t it = 1; it <= config_.max_iters; ++it) {
    step_ = it;
    time_steps(q, dt);
    const double r = rk_step(q, dt);
    if (it == 1) reference = r;
    const double normalized = reference > 0.0 ? r / reference : 0.0;
    history.iteration.push_back(it);
    history.residual.push_back(normalized);
    history.wall_time.push_back(std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count());
    if (normalized <= config_.residual_drop) break;
  }
  return history;
}

}  // namespace fvlimit
