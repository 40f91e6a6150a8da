#pragma once

#include "solfree/bitset.hpp"
#include "solfree/cayley.hpp"
#include "solfree/constructs.hpp"
#include "solfree/density.hpp"
#include "solfree/equation.hpp"
#include "solfree/errors.hpp"
#include "solfree/field.hpp"
#include "solfree/graph.hpp"
#include "solfree/harness.hpp"
#include "solfree/rainbow.hpp"
#include "solfree/soloracle.hpp"
#include "solfree/sparse_graph.hpp"
#include "solfree/version.hpp"
#include "solfree/witness.hpp"
