#pragma once

#include "aut_io.hpp"
#include "automaton.hpp"
#include "closure.hpp"
#include "completion.hpp"
#include "constellation.hpp"
#include "corpus.hpp"
#include "dissolve.hpp"
#include "error.hpp"
#include "gaschuetz.hpp"
#include "group.hpp"
#include "group_spec.hpp"
#include "linalg.hpp"
#include "perm.hpp"
#include "subgraph.hpp"
#include "word.hpp"
