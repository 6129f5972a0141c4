#pragma once

#include "phiseq/errors.hpp"
#include "phiseq/fp.hpp"
#include "phiseq/padovan.hpp"
#include "phiseq/poly.hpp"
#include "phiseq/report.hpp"
#include "phiseq/sequence.hpp"
#include "phiseq/verify.hpp"
