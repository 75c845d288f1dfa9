#pragma once

#include "bitset.hpp"
#include "certificate.hpp"
#include "classify.hpp"
#include "clique.hpp"
#include "compat_graph.hpp"
#include "error.hpp"
#include "field.hpp"
#include "io.hpp"
#include "orbits.hpp"
#include "parallel.hpp"
#include "report.hpp"
#include "subspace.hpp"
