#pragma once

// Moment theory of piecewise solutions of linear ODEs: exact moment
// recurrences, vanishing-index bounds, generating-function verification,
// and jump reconstruction from moments.

#include "pdmom/bounds.hpp"
#include "pdmom/concomitant.hpp"
#include "pdmom/corpus.hpp"
#include "pdmom/errors.hpp"
#include "pdmom/io.hpp"
#include "pdmom/laurent.hpp"
#include "pdmom/linalg.hpp"
#include "pdmom/mgf.hpp"
#include "pdmom/moments.hpp"
#include "pdmom/operator.hpp"
#include "pdmom/polynomial.hpp"
#include "pdmom/powersum.hpp"
#include "pdmom/rational.hpp"
#include "pdmom/rational_function.hpp"
#include "pdmom/reconstruct.hpp"
