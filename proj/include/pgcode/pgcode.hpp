/// @file pgcode.hpp
/// Convenience umbrella: pulls in the whole library.
#pragma once

#include "pgcode/analysis.hpp"
#include "pgcode/blocking.hpp"
#include "pgcode/codes.hpp"
#include "pgcode/common.hpp"
#include "pgcode/constructions.hpp"
#include "pgcode/geometry.hpp"
#include "pgcode/gf.hpp"
#include "pgcode/io.hpp"
#include "pgcode/linalg.hpp"
#include "pgcode/redei.hpp"
#include "pgcode/spread.hpp"
#include "pgcode/verify.hpp"
