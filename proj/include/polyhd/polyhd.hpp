#pragma once

// Exact higher (Hasse) derivations over rings of arbitrary characteristic,
// the characteristic-free chain rule, coordinate-change recursions for
// higher derivatives, and inversion of polynomial automorphisms.

#include "polyhd/chain_rule.hpp"
#include "polyhd/coord_change.hpp"
#include "polyhd/errors.hpp"
#include "polyhd/hasse.hpp"
#include "polyhd/integer.hpp"
#include "polyhd/inverter.hpp"
#include "polyhd/json_io.hpp"
#include "polyhd/linalg.hpp"
#include "polyhd/multiindex.hpp"
#include "polyhd/polymap.hpp"
#include "polyhd/polynomial.hpp"
#include "polyhd/ring.hpp"
#include "polyhd/series.hpp"
#include "polyhd/text.hpp"
