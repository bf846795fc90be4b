#pragma once

// Exact-arithmetic calculus of finite-dimensional super algebras, bimodules,
// implementers, and descent data over finite nerves.

#include "superbim/scalar.hpp"     // IWYU pragma: export
#include "superbim/matrix.hpp"     // IWYU pragma: export
#include "superbim/linalg.hpp"     // IWYU pragma: export
#include "superbim/graded.hpp"     // IWYU pragma: export
#include "superbim/quotient.hpp"   // IWYU pragma: export
#include "superbim/matexp.hpp"     // IWYU pragma: export
#include "superbim/report.hpp"     // IWYU pragma: export
#include "superbim/algebra.hpp"    // IWYU pragma: export
#include "superbim/builders.hpp"   // IWYU pragma: export
#include "superbim/bimodule.hpp"   // IWYU pragma: export
#include "superbim/adjoint.hpp"    // IWYU pragma: export
#include "superbim/implement.hpp"  // IWYU pragma: export
#include "superbim/cech.hpp"       // IWYU pragma: export
#include "superbim/dk.hpp"         // IWYU pragma: export
#include "superbim/morita.hpp"     // IWYU pragma: export
#include "superbim/json_io.hpp"    // IWYU pragma: export
#include "superbim/catalog.hpp"    // IWYU pragma: export
