#include "georate/quadrature.hpp"

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cmath>
#include <exception>
#include <limits>
#include <memory>
#include <mutex>
#include <sstream>
#include <vector>

#include "georate/errors.hpp"

namespace georate::quad {
namespace {

struct WorkspaceDeleter {
  void operator()(gsl_integration_workspace* w) const { gsl_integration_workspace_free(w); }
};
using Workspace = std::unique_ptr<gsl_integration_workspace, WorkspaceDeleter>;

// Nested integrals (an entropy integrand that evaluates a mixture density)
// each need their own workspace, so every thread keeps one per nesting level.
class WorkspaceLease {
 public:
  explicit WorkspaceLease(std::size_t intervals) {
    if (pool_.size() <= depth_) pool_.emplace_back();
    auto& slot = pool_[depth_];
    if (!slot || slot->limit < intervals) slot.reset(gsl_integration_workspace_alloc(intervals));
    if (!slot) throw std::bad_alloc();
    workspace_ = slot.get();
    ++depth_;
  }
  ~WorkspaceLease() { --depth_; }
  WorkspaceLease(const WorkspaceLease&) = delete;
  WorkspaceLease& operator=(const WorkspaceLease&) = delete;

  gsl_integration_workspace* get() const { return workspace_; }

 private:
  static thread_local std::vector<Workspace> pool_;
  static thread_local std::size_t depth_;
  gsl_integration_workspace* workspace_ = nullptr;
};

thread_local std::vector<Workspace> WorkspaceLease::pool_;
thread_local std::size_t WorkspaceLease::depth_ = 0;

// C++ exceptions must not unwind through GSL frames; the trampoline parks
// them here and the caller rethrows once GSL has returned.
struct Call {
  const std::function<double(double)>* f;
  std::exception_ptr failure;
};

double trampoline(double x, void* params) {
  auto* call = static_cast<Call*>(params);
  if (call->failure) return std::numeric_limits<double>::quiet_NaN();
  try {
    return (*call->f)(x);
  } catch (...) {
    call->failure = std::current_exception();
    return std::numeric_limits<double>::quiet_NaN();
  }
}

void disable_gsl_abort() {
  static std::once_flag once;
  std::call_once(once, [] { gsl_set_error_handler_off(); });
}

}  // namespace

double integrate(const std::function<double(double)>& f, double a, double b,
                 const Tolerance& tol) {
  if (a == b) return 0.0;
  disable_gsl_abort();
  WorkspaceLease lease(tol.max_intervals);
  Call call{&f, nullptr};
  gsl_function fn{&trampoline, &call};
  double value = 0.0;
  double error = 0.0;
  const int status = gsl_integration_qag(&fn, a, b, tol.absolute, tol.relative, tol.max_intervals,
                                         GSL_INTEG_GAUSS21, lease.get(), &value, &error);
  if (call.failure) std::rethrow_exception(call.failure);
  const double target = std::max(tol.absolute, tol.relative * std::abs(value));
  if (!std::isfinite(value) || (status != GSL_SUCCESS && error > target)) {
    std::ostringstream msg;
    msg << "quadrature on [" << a << ", " << b << "] did not converge ("
        << gsl_strerror(status) << "): value " << value << ", error estimate " << error
        << ", target " << target;
    throw QuadratureError(msg.str());
  }
  return value;
}

double integrate_piecewise(const std::function<double(double)>& f,
                           std::span<const double> breakpoints, const Tolerance& tol) {
  double total = 0.0;
  for (std::size_t i = 1; i < breakpoints.size(); ++i) {
    total += integrate(f, breakpoints[i - 1], breakpoints[i], tol);
  }
  return total;
}

}  // namespace georate::quad
