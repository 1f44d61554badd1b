#pragma once

#include "latin/construct.hpp"
#include "latin/core.hpp"
#include "latin/gf.hpp"
#include "latin/io.hpp"
#include "latin/search.hpp"
#include "latin/table.hpp"
#include "latin/verify.hpp"
