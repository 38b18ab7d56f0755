#pragma once

#include "convexlab/bump.hpp"
#include "convexlab/convexity.hpp"
#include "convexlab/distance.hpp"
#include "convexlab/domain.hpp"
#include "convexlab/exhaust.hpp"
#include "convexlab/field.hpp"
#include "convexlab/gallery.hpp"
#include "convexlab/hulls.hpp"
#include "convexlab/order.hpp"
#include "convexlab/report.hpp"
#include "convexlab/sampling.hpp"
