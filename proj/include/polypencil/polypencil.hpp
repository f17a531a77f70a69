#pragma once

// Umbrella header: exact linearization families for matrix polynomials,
// their system-matrix partitions, canonical forms, verification, and the
// floating-point eigenvalue layer.

#include "polypencil/numbers.hpp"
#include "polypencil/unipoly.hpp"
#include "polypencil/ratfunc.hpp"
#include "polypencil/matrices.hpp"
#include "polypencil/smith.hpp"
#include "polypencil/system_matrix.hpp"
#include "polypencil/families.hpp"
#include "polypencil/verify.hpp"
#include "polypencil/numeig.hpp"
#include "polypencil/io.hpp"
