#pragma once

#include "hayman/error.hpp"
#include "hayman/constant_field.hpp"
#include "hayman/polynomial.hpp"
#include "hayman/series.hpp"
#include "hayman/roots.hpp"
#include "hayman/ratfunc.hpp"
#include "hayman/laurent.hpp"
#include "hayman/expsum.hpp"
#include "hayman/local_series.hpp"
#include "hayman/classifier.hpp"
#include "hayman/parser.hpp"
#include "hayman/numeric_check.hpp"
