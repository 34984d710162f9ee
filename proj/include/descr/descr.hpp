#pragma once

#include "certify.hpp"
#include "criteria.hpp"
#include "lp.hpp"
#include "oracle.hpp"
#include "parse.hpp"
#include "polytope.hpp"
#include "rational.hpp"
#include "signomial.hpp"
#include "svg.hpp"
#include "trace.hpp"
