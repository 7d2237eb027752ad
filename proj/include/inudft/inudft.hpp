#ifndef INUDFT_INUDFT_HPP
#define INUDFT_INUDFT_HPP

#include "inudft/adi_shifts.hpp"
#include "inudft/arcs.hpp"
#include "inudft/cauchy.hpp"
#include "inudft/elliptic.hpp"
#include "inudft/fadi.hpp"
#include "inudft/fft.hpp"
#include "inudft/grids.hpp"
#include "inudft/hss.hpp"
#include "inudft/interp_decomp.hpp"
#include "inudft/iterative.hpp"
#include "inudft/nodes.hpp"
#include "inudft/pipeline.hpp"
#include "inudft/transforms.hpp"
#include "inudft/types.hpp"
#include "inudft/urv.hpp"

#endif  // INUDFT_INUDFT_HPP
