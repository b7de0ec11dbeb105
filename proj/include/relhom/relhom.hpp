#pragma once

// Finite relational structures, their homomorphism order, duality
// constructions, finite maximal antichains, and the finite-lattice analogue.

#include "relhom/algebra.hpp"
#include "relhom/duality.hpp"
#include "relhom/enumerate.hpp"
#include "relhom/fixtures.hpp"
#include "relhom/hom.hpp"
#include "relhom/lattice.hpp"
#include "relhom/order.hpp"
#include "relhom/shadow.hpp"
#include "relhom/structure.hpp"
