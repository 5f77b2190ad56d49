#pragma once

#include "memshape/cauchy.hpp"
#include "memshape/coframe.hpp"
#include "memshape/curve.hpp"
#include "memshape/cylinder.hpp"
#include "memshape/datum.hpp"
#include "memshape/elliptic.hpp"
#include "memshape/errors.hpp"
#include "memshape/expr.hpp"
#include "memshape/io.hpp"
#include "memshape/linalg.hpp"
#include "memshape/march.hpp"
#include "memshape/mesh.hpp"
#include "memshape/numerics.hpp"
#include "memshape/patch.hpp"
#include "memshape/polyline.hpp"
#include "memshape/shape.hpp"
#include "memshape/taylor.hpp"
#include "memshape/types.hpp"
#include "memshape/version.hpp"
