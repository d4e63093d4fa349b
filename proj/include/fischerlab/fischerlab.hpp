#pragma once

#include "fischerlab/errors.hpp"
#include "fischerlab/scalar.hpp"
#include "fischerlab/multi_index.hpp"
#include "fischerlab/polynomial.hpp"
#include "fischerlab/exact_linalg.hpp"
#include "fischerlab/apolar.hpp"
#include "fischerlab/fischer.hpp"
#include "fischerlab/jacobi.hpp"
#include "fischerlab/ks_bounds.hpp"
#include "fischerlab/growth.hpp"
#include "fischerlab/seq_lemma.hpp"
#include "fischerlab/expression.hpp"
#include "fischerlab/document.hpp"
#include "fischerlab/random.hpp"
#include "fischerlab/cli.hpp"
