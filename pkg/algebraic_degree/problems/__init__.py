from .all_problems import generate_instance, predicted_degree_from_name, problem_from_name
from .cones import gen_pocp, gen_socp
from .general import gen_general, gen_unconstrained
from .problem_utils import GenConfig, derive_seed, quadratic_form_rank, random_dense
from .qcqp import gen_qcqp
