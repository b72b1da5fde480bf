#pragma once

// Umbrella header: determinants of general square matrices computed and
// factored through their rooted digraph representation.

#include "arbordet/arborescence.hpp"
#include "arbordet/digraph.hpp"
#include "arbordet/error.hpp"
#include "arbordet/factoring.hpp"
#include "arbordet/linalg.hpp"
#include "arbordet/matrix.hpp"
#include "arbordet/polynomial.hpp"
#include "arbordet/reduced.hpp"
#include "arbordet/transform.hpp"
