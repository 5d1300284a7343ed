#pragma once

#include "afflab/error.hpp"
#include "afflab/shape.hpp"
#include "afflab/polynomial.hpp"
#include "afflab/fiber.hpp"
#include "afflab/operator.hpp"
#include "afflab/algebra.hpp"
#include "afflab/btransform.hpp"
#include "afflab/partition.hpp"
#include "afflab/trace.hpp"
#include "afflab/order.hpp"
