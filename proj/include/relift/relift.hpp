#pragma once

#include "relift/amalgam.hpp"
#include "relift/codec.hpp"
#include "relift/core.hpp"
#include "relift/cuts.hpp"
#include "relift/duality.hpp"
#include "relift/enumerate.hpp"
#include "relift/error.hpp"
#include "relift/generate.hpp"
#include "relift/growth.hpp"
#include "relift/hom.hpp"
#include "relift/iso.hpp"
#include "relift/lift.hpp"
#include "relift/lift_codec.hpp"
#include "relift/order.hpp"
#include "relift/ramsey.hpp"
#include "relift/signature.hpp"
#include "relift/structure.hpp"
