#ifndef CASTLAB_CASTLAB_HPP
#define CASTLAB_CASTLAB_HPP

#include "castlab/types.hpp"
#include "castlab/term.hpp"
#include "castlab/subst.hpp"
#include "castlab/typecheck.hpp"
#include "castlab/reduce.hpp"
#include "castlab/precision.hpp"
#include "castlab/castcomp.hpp"
#include "castlab/syntax.hpp"
#include "castlab/generate.hpp"
#include "castlab/mutate.hpp"
#include "castlab/verdict.hpp"
#include "castlab/campaign.hpp"
#include "castlab/json_io.hpp"

#endif
