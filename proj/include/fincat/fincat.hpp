#ifndef FINCAT_FINCAT_HPP
#define FINCAT_FINCAT_HPP

// Convenience umbrella: the whole toolkit in one include.

#include "fincat/core.hpp"
#include "fincat/fibers.hpp"
#include "fincat/homology.hpp"
#include "fincat/io.hpp"
#include "fincat/pi1.hpp"
#include "fincat/simplexloop.hpp"
#include "fincat/simplicial.hpp"
#include "fincat/subdivision.hpp"
#include "fincat/tilde.hpp"
#include "fincat/twocat.hpp"

#endif
