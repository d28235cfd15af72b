# vim: set tabstop=8 softtabstop=4 noexpandtab
from . import baselines
from . import config
from . import errors
from . import harness
from . import methods
from . import nfile
from . import nlog
from . import optimality
from . import scale_invariant
from . import simulate
from . import specfun
from . import stats_core
from . import universal_inference
