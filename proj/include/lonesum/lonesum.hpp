#pragma once

#include "lonesum/core.hpp"
#include "lonesum/strong.hpp"
#include "lonesum/count.hpp"
#include "lonesum/series.hpp"
#include "lonesum/bijection.hpp"
#include "lonesum/weak.hpp"
#include "lonesum/oracle.hpp"
