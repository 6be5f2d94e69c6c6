""" Default configuration class """

class DefaultConfig:
    def __init__(self):
        self.decimal_digits = 6
        self.collapse_budget_factor = 4
        self.strip_radius = 6
        self.max_twist_iterations = 16
        self.max_tighten_steps = 64
        self.catalog_backtrack_limit = 20000
        self.jobs = 1
        self.hdf_compression = 'gzip'
