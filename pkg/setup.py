from setuptools import setup

setup(name='nudd',
      version=open('VERSION').read().strip(),
      description='Nested Uhrig dynamical decoupling laboratory',
      packages=['nudd'],
      python_requires='>=3.8',
      install_requires=['mpmath', 'numpy'],
      extras_require={
          'cache': ['sqlalchemy>=1.4'],
          'test': ['pytest'],
      },
      entry_points={
          'console_scripts': ['nudd=nudd.cli:main'],
      },
     )
