#Copyright (c) 2026, The seqtt Authors
#All rights reserved. Distributed under the BSD 3-Clause license, see LICENSE.
from setuptools import setup

with open('README.md') as f:
    readme = f.read()

with open('LICENSE') as f:
    license = f.read()

setup(
    name='sequential_ttest_toolkit',
    version='0.1.0',
    description='Anytime-valid sequential t-tests: e-processes, test martingales and confidence sequences',
    long_description=readme,
    long_description_content_type='text/markdown',
    author='The seqtt Authors',
    license=license,
    packages=['seqtt'],
    package_dir={'seqtt': 'seqtt'},
    python_requires='>=3.7',
    install_requires=[
	'numpy>=1.17',
	'scipy>=1.4',
    ],
    entry_points={
	    'console_scripts': [
		'seqtt = seqtt.harness:main'
	],
    }
)
