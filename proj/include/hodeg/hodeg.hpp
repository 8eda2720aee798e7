#pragma once

#include "hodeg/integer.hpp"
#include "hodeg/error.hpp"
#include "hodeg/word.hpp"
#include "hodeg/smith.hpp"
#include "hodeg/presentation.hpp"
#include "hodeg/laurent.hpp"
#include "hodeg/abelian.hpp"
#include "hodeg/group_ring.hpp"
#include "hodeg/fox.hpp"
#include "hodeg/qpoly.hpp"
#include "hodeg/alexander_module.hpp"
#include "hodeg/oracle.hpp"
#include "hodeg/skew.hpp"
#include "hodeg/matrix.hpp"
#include "hodeg/diagonalize.hpp"
#include "hodeg/milnor.hpp"
#include "hodeg/degrees.hpp"
#include "hodeg/bounds.hpp"
#include "hodeg/report.hpp"
