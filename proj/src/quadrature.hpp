#pragma once

#include <gsl/gsl_errno.h>
#include <gsl/gsl_integration.h>

#include <cstddef>

namespace liouville::detail {

struct QuadWorkspace {
  QuadWorkspace() : w(gsl_integration_workspace_alloc(kLimit)) { gsl_set_error_handler_off(); }
  ~QuadWorkspace() { gsl_integration_workspace_free(w); }
  QuadWorkspace(const QuadWorkspace&) = delete;
  QuadWorkspace& operator=(const QuadWorkspace&) = delete;

  static constexpr std::size_t kLimit = 2000;
  gsl_integration_workspace* w;
};

// Adapter so lambdas can be handed to GSL.
template <class F>
gsl_function as_gsl(const F& f) {
  return {[](double x, void* p) { return (*static_cast<const F*>(p))(x); }, const_cast<F*>(&f)};
}

}  // namespace liouville::detail
