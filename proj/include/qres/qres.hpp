#pragma once

#include "qres/cyclo.hpp"
#include "qres/poly.hpp"
#include "qres/polycore.hpp"
#include "qres/primality.hpp"
#include "qres/qarith.hpp"
#include "qres/rational.hpp"
#include "qres/report.hpp"
#include "qres/verify.hpp"
#include "qres/version.hpp"
