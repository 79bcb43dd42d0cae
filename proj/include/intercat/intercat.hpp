#pragma once

#include "intercat/error.hpp"
#include "intercat/finset.hpp"
#include "intercat/graphcat.hpp"
#include "intercat/colimits.hpp"
#include "intercat/free.hpp"
#include "intercat/coequalize.hpp"
#include "intercat/fibrations.hpp"
#include "intercat/iso.hpp"
#include "intercat/oracle.hpp"
#include "intercat/io.hpp"
