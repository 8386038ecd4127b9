#pragma once

#include "rpl/expression.hpp"
#include "rpl/print.hpp"
#include "rpl/parse.hpp"
#include "rpl/rectify.hpp"
#include "rpl/verdict.hpp"
#include "rpl/interpretation.hpp"
#include "rpl/universe.hpp"
#include "rpl/matching.hpp"
#include "rpl/satisfaction.hpp"
#include "rpl/fragment.hpp"
