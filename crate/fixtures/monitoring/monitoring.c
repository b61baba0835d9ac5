#include "simpletools.h"
#include "abdrive.h"
#include <stdio.h>
const int irLedPin = 2; //IR emitter port
const int irRxPin = 3; //IR detector port
const int dhtPin = 5; //DHT22 data port
const int alertLed = 6; //alert LED port
const int H_T = 70; //humidity alert threshold
int tick = 0; //loop counter between DHT samples
long ReadIr(int txPin, int rxPin){
  freqout(txPin, 1, 38000);
  long state = get_state(rxPin);
  return state;
}
int main(){
  while (1){
    long blocked = ReadIr(irLedPin, irRxPin);
    if (blocked == 0)
      drive_speed(32, 32); //path clear
    else {
      drive_speed(-32, 32); //rotate away
      pause(400);
    }
    tick = tick + 1;
    if (tick > 50){
      long humidity = dht_read(dhtPin); //sample the DHT22
      if (humidity > H_T)
        high(alertLed); //raise the alert
      else
        low(alertLed);
      tick = 0;
    }
    pause(20);
  }
}
