#pragma once

#include "curvex/automorphism.hpp"
#include "curvex/complex2.hpp"
#include "curvex/deadline.hpp"
#include "curvex/errors.hpp"
#include "curvex/farey.hpp"
#include "curvex/graph_ops.hpp"
#include "curvex/level.hpp"
#include "curvex/product.hpp"
#include "curvex/psl2mod.hpp"
#include "curvex/reconstruct.hpp"
#include "curvex/slope.hpp"
#include "curvex/surface.hpp"
#include "curvex/surface_checks.hpp"
#include "curvex/tower.hpp"
