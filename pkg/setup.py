"""

"""

from setuptools import setup, find_packages
import lazytt

with open('README.rst') as f:
    long_description = f.read()

print('Version: {}'.format(lazytt.__version__))

setup(name='LazyTrainTracks',
      version = lazytt.__version__,
      description = 'Exact train-track calculus: splits, flat strips, cube complexes and duals',
      long_description = long_description,
      url = 'https://github.com/CCampJr/LazyTrainTracks',
      author = 'Charles H. Camp Jr.',
      author_email = 'charles.camp@nist.gov',
      license = 'Public Domain',
      packages = find_packages(),
      zip_safe = False,
      include_package_data = True,
      install_requires=['numpy', 'h5py>=2.6.0', 'networkx>=2.5', 'sympy>=1.6'],
      setup_requires=['pytest-runner'],
      tests_require=['pytest', 'pytest-cov', 'hypothesis'],
      entry_points={'console_scripts': ['lazytt=lazytt.cli:main']},
      classifiers=['Development Status :: 3 - Alpha',
                   'Intended Audience :: Developers',
                   'Intended Audience :: Science/Research',
                   'Operating System :: OS Independent',
                   'Environment :: Console',
                   'Programming Language :: Python :: 3 :: Only',
                   'Programming Language :: Python :: 3.8',
                   'Programming Language :: Python :: 3.9',
                   'Programming Language :: Python :: 3.10',
                   'Topic :: Scientific/Engineering :: Mathematics',
                   'Topic :: Software Development :: Libraries :: Python Modules'
                  ])
