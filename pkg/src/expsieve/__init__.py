"""Desk-scale experiments on the large sieve for ``lambda^{s_n}`` modulo primes."""
from .arith import divisors, factorize, is_prime, mult_order, omega, powmod, sieve_primes, tau
from .census import CensusParams, PrimeRecord, VerificationReport, order_census, split_E
from .discrepancy import PointSet, decay_exponent, erdos_turan_bound, extreme_discrepancy, fractional_parts, star_discrepancy
from .expsum import ResidueProfile, Strategy, SumScanResult, gauss_sum_max, hbk_bound, max_abs_sigma, residue_profile, sigma_at
from .pairs import ExponentPair, f_exponent, konyagin_pair, konyagin_pair_prime, optimize_f
from .seqgen import CoefficientSpec, SequenceSpec, gen_gamma, gen_s

__version__ = "0.1.0"
