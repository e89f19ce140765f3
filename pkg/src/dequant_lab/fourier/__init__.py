from dequant_lab.fourier.features import (
    TWO_PI, Dataset, FeatureMap, FrequencySet, LinearModel, data_matrix, eval_linear,
    features, gram, parseval_variance, sample_uniform_inputs,
)
from dequant_lab.fourier.regression import (
    GDResult, SingularKernelError, empirical_risk, gd_train, max_step, mnls,
    underparameterized_fit,
)
from dequant_lab.fourier.analysis import (
    KernelEigRecord, L2Estimate, SeparationError, SeparationRecord, kernel_min_eig_experiment,
    kernel_s2, l2_mu_distance, maximize_abs, refined_sup_distance, reverse_lipschitz_constant,
    separation_bounds, sup_distance_grid,
)
