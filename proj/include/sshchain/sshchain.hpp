#pragma once

#include "sshchain/chain.hpp"
#include "sshchain/disorder.hpp"
#include "sshchain/dynamics.hpp"
#include "sshchain/error.hpp"
#include "sshchain/spectral.hpp"
#include "sshchain/topology.hpp"
#include "sshchain/tridiagonal_eigen.hpp"
