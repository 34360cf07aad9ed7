#pragma once

// Everything at once.

#include <logmono/exactnum.hpp>
#include <logmono/poly.hpp>
#include <logmono/ratfun.hpp>
#include <logmono/expr.hpp>
#include <logmono/sequences.hpp>
#include <logmono/dsl.hpp>
#include <logmono/logcheck.hpp>
#include <logmono/positivity.hpp>
#include <logmono/sqrt_decompose.hpp>
#include <logmono/certify.hpp>
#include <logmono/boundforge.hpp>
#include <logmono/serialize.hpp>
#include <logmono/reproduce.hpp>
