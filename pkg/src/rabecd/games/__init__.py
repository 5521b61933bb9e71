from .adversaries import (
    STRATEGIES,
    AdversaryStrategy,
    CertForger,
    DecryptFirst,
    FunctionalProber,
    HonestCelDeleter,
    HonestDeleter,
    MeasureAttackStats,
    MeasureThenGuess,
    QuerySchedule,
    ZProber,
    fuzz_strategy,
    run_measure_attack,
    tamper_cert,
)
from .exact import (
    TARGETS,
    ExactTdReport,
    computational_distribution,
    exact_residual_td,
    hadamard_measure_distribution,
    view_distribution,
)
from .experiments import (
    CelOutput,
    CelPackage,
    ChallengePackage,
    Challenger,
    ExperimentResult,
    RevealedKeys,
    ShadChallenge,
    ShadChallenger,
    StrategyContext,
    admissibility_check,
    estimate_experiment_advantage,
    run_cel_experiment,
    run_decryption_game,
    run_exp_cd,
    run_exp_ced,
    run_exp_shad,
    run_verification_game,
    trial_seed,
)
from .stats import (
    AdvantageEstimate,
    binomial_sigma,
    empirical_distribution,
    empirical_tv_distance,
    estimate_advantage,
    l1_sampling_sigma,
    wilson_interval,
)
from .transcript import GameTranscript, fingerprint_hex, normalize

__all__ = [
    "STRATEGIES",
    "TARGETS",
    "AdversaryStrategy",
    "AdvantageEstimate",
    "CelOutput",
    "CelPackage",
    "CertForger",
    "ChallengePackage",
    "Challenger",
    "DecryptFirst",
    "ExactTdReport",
    "ExperimentResult",
    "FunctionalProber",
    "GameTranscript",
    "HonestCelDeleter",
    "HonestDeleter",
    "MeasureAttackStats",
    "MeasureThenGuess",
    "QuerySchedule",
    "RevealedKeys",
    "ShadChallenge",
    "ShadChallenger",
    "StrategyContext",
    "ZProber",
    "admissibility_check",
    "binomial_sigma",
    "computational_distribution",
    "empirical_distribution",
    "empirical_tv_distance",
    "estimate_advantage",
    "estimate_experiment_advantage",
    "exact_residual_td",
    "fingerprint_hex",
    "normalize",
    "fuzz_strategy",
    "hadamard_measure_distribution",
    "l1_sampling_sigma",
    "run_cel_experiment",
    "run_decryption_game",
    "run_exp_cd",
    "run_exp_ced",
    "run_exp_shad",
    "run_measure_attack",
    "run_verification_game",
    "tamper_cert",
    "trial_seed",
    "view_distribution",
    "wilson_interval",
]
