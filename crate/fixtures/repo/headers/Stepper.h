#ifndef Stepper_h
#define Stepper_h

// Two and four wire stepper motor control, constant speed.

class Stepper {
public:
  Stepper(int numberOfSteps, int motorPin1, int motorPin2);
  Stepper(int numberOfSteps, int motorPin1, int motorPin2,
          int motorPin3, int motorPin4);
  void setSpeed(long whatSpeed);
  void step(int numberOfSteps);
  int version();
private:
  void stepMotor(int thisStep);
  int direction;
  unsigned long stepDelay;
  int numberOfSteps;
};

#endif
